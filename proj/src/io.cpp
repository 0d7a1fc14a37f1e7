#include "hll/io.hpp"

#include <fstream>
#include <sstream>

#include <unistd.h>

#include "hll/error.hpp"

namespace hll {

nlohmann::json map_to_json(const PlanarMap& m, std::optional<Dart> outer_dart) {
    nlohmann::json j;
    j["darts"] = m.dart_count();
    j["twin"] = m.twin_array();
    j["next"] = m.next_array();
    j["root_dart"] = m.root_dart();
    j["half_edge_dart"] = m.half_edge() ? nlohmann::json(*m.half_edge()) : nlohmann::json(nullptr);
    if (outer_dart) j["outer_dart"] = *outer_dart;
    return j;
}

std::optional<Dart> outer_dart_from_json(const nlohmann::json& j) {
    if (!j.contains("outer_dart") || j["outer_dart"].is_null()) return std::nullopt;
    try {
        return j["outer_dart"].get<Dart>();
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed outer_dart: ") + e.what());
    }
}

PlanarMap map_from_json(const nlohmann::json& j) {
    try {
        auto n = j.at("darts").get<std::size_t>();
        auto twin = j.at("twin").get<std::vector<Dart>>();
        auto next = j.at("next").get<std::vector<Dart>>();
        auto root = j.at("root_dart").get<Dart>();
        std::optional<Dart> half;
        if (j.contains("half_edge_dart") && !j["half_edge_dart"].is_null())
            half = j["half_edge_dart"].get<Dart>();
        if (twin.size() != n || next.size() != n) throw InvalidInput("dart arrays do not match \"darts\"");
        if (n > 0 && root >= n) throw InvalidInput("root dart out of range");
        return PlanarMap(std::move(twin), std::move(next), root, half);
    } catch (const nlohmann::json::exception& e) {
        throw InvalidInput(std::string("malformed map JSON: ") + e.what());
    }
}

std::string metric_to_csv(const FiniteMetricSpace& x) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = 0; j < x.size(); ++j) os << (j ? "," : "") << x(i, j);
        os << "\n";
    }
    return os.str();
}

FiniteMetricSpace metric_from_csv(std::string_view text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            try {
                std::size_t used = 0;
                row.push_back(std::stod(cell, &used));
                if (cell.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(cell);
            } catch (const std::logic_error&) {
                throw InvalidInput("bad distance entry \"" + cell + "\"");
            }
        }
        rows.push_back(std::move(row));
    }
    const std::size_t n = rows.size();
    std::vector<double> d;
    d.reserve(n * n);
    for (const auto& r : rows) {
        if (r.size() != n) throw InvalidInput("distance matrix is not square");
        d.insert(d.end(), r.begin(), r.end());
    }
    return FiniteMetricSpace(n, std::move(d));
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw InvalidInput("cannot read " + p.string());
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_atomic(const std::filesystem::path& p, std::string_view content) {
    auto tmp = p;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::filesystem::remove(tmp);
            throw InvalidInput("write failed for " + p.string());
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, p, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw InvalidInput("cannot rename onto " + p.string() + ": " + ec.message());
    }
}

} // namespace hll
