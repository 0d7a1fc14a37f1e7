#include "hll/weights.hpp"

#include <charconv>

#include "hll/error.hpp"

namespace hll {

FaceWeights FaceWeights::ones() {
    FaceWeights w;
    w.name_ = "ones";
    w.w_ = [](int) { return Rational(1); };
    return w;
}

FaceWeights FaceWeights::linear() {
    FaceWeights w;
    w.name_ = "linear";
    w.w_ = [](int k) { return Rational(k); };
    return w;
}

FaceWeights FaceWeights::table(std::map<int, Rational> values) {
    FaceWeights w;
    w.name_ = "table:";
    bool first = true;
    for (const auto& [k, v] : values) {
        if (k < 4) throw InvalidInput("face weights are defined for degrees k >= 4");
        if (v < 0) throw InvalidInput("face weights must be non-negative");
        if (!first) w.name_ += ",";
        w.name_ += std::to_string(k) + "=" + v.str();
        first = false;
        if (v > 0) w.max_degree_ = k;
    }
    if (!w.max_degree_) w.max_degree_ = 3;
    w.w_ = [values = std::move(values)](int k) {
        auto it = values.find(k);
        return it == values.end() ? Rational(0) : it->second;
    };
    return w;
}

FaceWeights FaceWeights::parse(std::string_view spec) {
    if (spec == "ones") return ones();
    if (spec == "linear") return linear();
    constexpr std::string_view prefix = "table:";
    if (spec.substr(0, prefix.size()) != prefix)
        throw InvalidInput("unknown weights '" + std::string(spec) +
                           "' (expected ones, linear or table:k=v,...)");
    std::map<int, Rational> values;
    std::string_view rest = spec.substr(prefix.size());
    while (!rest.empty()) {
        auto comma = rest.find(',');
        auto item = rest.substr(0, comma);
        rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
        auto eq = item.find('=');
        if (eq == std::string_view::npos) throw InvalidInput("table entry must be k=v");
        int k = 0;
        auto ks = item.substr(0, eq);
        auto [p, ec] = std::from_chars(ks.data(), ks.data() + ks.size(), k);
        if (ec != std::errc() || p != ks.data() + ks.size())
            throw InvalidInput("bad degree in weight table");
        try {
            values[k] = Rational(std::string(item.substr(eq + 1)));
        } catch (const std::exception&) {
            throw InvalidInput("bad weight value in table");
        }
    }
    return table(std::move(values));
}

double FaceWeights::operator()(int k) const { return static_cast<double>(w_(k)); }

Rational FaceWeights::exact(int k) const { return w_(k); }

} // namespace hll
