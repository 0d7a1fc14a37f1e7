#include "hll/cli.hpp"

#include <cstdlib>
#include <functional>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hll/audit.hpp"
#include "hll/bijection.hpp"
#include "hll/error.hpp"
#include "hll/experiments.hpp"
#include "hll/gw.hpp"
#include "hll/halin.hpp"
#include "hll/io.hpp"
#include "hll/lemma.hpp"
#include "hll/looptree.hpp"
#include "hll/metric.hpp"
#include "hll/render.hpp"

#ifndef HLL_VERSION
#define HLL_VERSION "dev"
#endif
#ifndef HLL_GIT_REV
#define HLL_GIT_REV "unknown"
#endif
#ifndef HLL_BUILD_TYPE
#define HLL_BUILD_TYPE "unknown"
#endif

namespace hll::cli {

using nlohmann::json;

std::string version_string() {
    return std::string("hll ") + HLL_VERSION + " (rev " + HLL_GIT_REV + ", " + HLL_BUILD_TYPE + ", " +
           __VERSION__ + ")";
}

namespace {

struct Global {
    std::uint64_t seed = 42;
    unsigned threads = 0;
    std::string out;
    std::string format;
};

// Per-run context handed to commands.
struct Context {
    Global g;
    std::ostream& out;
    json config;

    std::string format(const std::string& fallback, std::initializer_list<const char*> allowed) const {
        std::string f = g.format.empty() ? fallback : g.format;
        for (const char* a : allowed)
            if (f == a) return f;
        throw InvalidInput("format \"" + f + "\" is not available for this command");
    }

    void emit(const std::string& s) const {
        if (g.out.empty()) out << s;
        else write_atomic(g.out, s);
    }
    void emit(const json& j) const { emit(j.dump(2) + "\n"); }
};

std::vector<std::size_t> parse_sizes(const std::string& text) {
    std::vector<std::string> tok;
    std::stringstream ss(text);
    for (std::string t; std::getline(ss, t, ',');) {
        t.erase(0, t.find_first_not_of(" \t"));
        t.erase(t.find_last_not_of(" \t") + 1);
        if (!t.empty()) tok.push_back(t);
    }
    auto number = [](const std::string& t) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(t, &used);
            if (used != t.size() || v == 0) throw std::invalid_argument(t);
            return static_cast<std::size_t>(v);
        } catch (const std::logic_error&) {
            throw InvalidInput("bad size \"" + t + "\"");
        }
    };
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < tok.size(); ++i) {
        if (tok[i] != "...") {
            out.push_back(number(tok[i]));
            continue;
        }
        // a, b, ..., z: continue the geometric (or else arithmetic) pattern up to z
        if (out.size() < 2 || i + 1 >= tok.size() || tok[i + 1] == "...")
            throw InvalidInput("\"...\" needs two sizes before it and one after");
        std::size_t a = out[out.size() - 2], b = out.back(), z = number(tok[i + 1]);
        if (b <= a) throw InvalidInput("sizes around \"...\" must increase");
        bool geometric = b % a == 0;
        for (std::size_t x = b;;) {
            x = geometric ? x * (b / a) : x + (b - a);
            if (x >= z) {
                if (x != z) throw InvalidInput("\"...\" does not reach " + tok[i + 1]);
                break;
            }
            out.push_back(x);
        }
    }
    if (out.empty()) throw InvalidInput("no sizes given");
    return out;
}

OffspringDistribution offspring(std::optional<double> alpha, const std::string& weights) {
    if (alpha) return OffspringDistribution::stable(*alpha);
    return mu_from_weights(FaceWeights::parse(weights)).mu;
}

json marked_json(const MarkedTree& t) {
    return {{"marked", t.to_string()}, {"shape", t.shape().to_string()}, {"marks", t.marks()}};
}

json halin_json(const HalinMap& h) {
    json faces = json::array();
    for (std::size_t f = 0; f < h.faces().size(); ++f) faces.push_back(h.faces().degree(f));
    return {{"tree", h.tree().to_string()},
            {"vertices", h.map().vertex_count()},
            {"edges", h.map().edge_count()},
            {"faces", h.map().face_count()},
            {"face_degrees", faces},
            {"outer_face", h.outer_face()},
            {"map", map_to_json(h.map(), h.outer_dart())}};
}

std::string halin_text(const HalinMap& h) {
    std::ostringstream os;
    os << "tree " << h.tree().to_string() << "\n";
    os << "V=" << h.map().vertex_count() << " E=" << h.map().edge_count() << " F=" << h.map().face_count()
       << "\n";
    os << "face degrees:";
    for (std::size_t f = 0; f < h.faces().size(); ++f)
        os << " " << h.faces().degree(f) << (f == h.outer_face() ? "(outer)" : "");
    os << "\n";
    return os.str();
}

std::string output_halin(const Context& c, const HalinMap& h) {
    auto f = c.format("json", {"json", "text", "dot", "svg"});
    if (f == "json") return halin_json(h).dump(2) + "\n";
    if (f == "text") return halin_text(h);
    return render_halin(h, parse_render_format(f));
}

HalinMap halin_from_input(const std::string& tree, const std::string& marked, const std::string& map_file) {
    int given = !tree.empty() + !marked.empty() + !map_file.empty();
    if (given != 1) throw InvalidInput("give exactly one of --tree, --marked, --map");
    if (!tree.empty()) return build_halin(PlaneTree::parse(tree));
    if (!marked.empty()) return phi_inverse(MarkedTree::parse(marked));
    json j = json::parse(read_file(map_file));
    if (j.contains("map")) j = j["map"];
    auto h = halin_from_map(map_from_json(j), outer_dart_from_json(j));
    if (!h) throw InvalidInput("the map is not a Halin map with the expected root");
    return *h;
}

// enumerate -------------------------------------------------------------------

struct EnumerateArgs {
    std::size_t n = 0;
    bool count_only = false;
    std::string kind = "halin";
};

void cmd_enumerate(Context& c, const EnumerateArgs& a) {
    c.config.update({{"n", a.n}, {"count_only", a.count_only}, {"kind", a.kind}});
    std::vector<std::string> items;
    if (a.kind == "halin") {
        for (const auto& h : enumerate_halin(a.n)) items.push_back(h.tree().to_string());
    } else if (a.kind == "trees") {
        for (const auto& t : enumerate_trees(a.n)) items.push_back(t.to_string());
    } else if (a.kind == "marked") {
        for (const auto& t : enumerate_marked(a.n)) items.push_back(t.to_string());
    } else {
        throw InvalidInput("unknown kind \"" + a.kind + "\"");
    }
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        json j = {{"kind", a.kind}, {"n", a.n}, {"count", items.size()}};
        if (!a.count_only) j["items"] = items;
        c.emit(j);
        return;
    }
    std::ostringstream os;
    if (a.count_only) os << items.size() << "\n";
    else
        for (const auto& s : items) os << s << "\n";
    c.emit(os.str());
}

// sample: Boltzmann Halin maps via GW + uniform marks + inverse bijection ------

struct SampleArgs {
    std::size_t n = 0;
    std::size_t count = 1;
    std::string weights = "ones";
};

void cmd_sample(Context& c, const SampleArgs& a) {
    c.config.update({{"n", a.n}, {"count", a.count}, {"weights", a.weights}});
    if (a.n == 0) throw InvalidInput("n must be positive");
    auto law = mu_from_weights(FaceWeights::parse(a.weights));
    check_support(law.mu, a.n);
    ConditionedSampler sampler(law.mu, a.n);
    std::vector<HalinMap> maps;
    for (std::size_t i = 0; i < a.count; ++i) {
        Rng rng(derive_seed(c.g.seed, a.n, i));
        MarkedTree t = uniformly_marked(sampler(rng), rng);
        HalinMap h = phi_inverse(t);
        auto problems = validate(h, true);
        if (!problems.empty()) throw InvariantViolation(problems.front());
        maps.push_back(std::move(h));
    }
    auto f = c.format("text", {"text", "json", "dot", "svg"});
    if (f == "json") {
        json arr = json::array();
        for (const auto& h : maps) arr.push_back(halin_json(h));
        c.emit(arr);
    } else if (f == "text") {
        std::ostringstream os;
        for (const auto& h : maps) os << h.tree().to_string() << "\n";
        c.emit(os.str());
    } else {
        if (maps.size() != 1) throw InvalidInput("drawings need --count 1");
        c.emit(render_halin(maps.front(), parse_render_format(f)));
    }
}

// gw ----------------------------------------------------------------------------

struct GwSampleArgs {
    std::size_t n = 0;
    std::size_t count = 1;
    std::optional<double> alpha;
    std::string weights = "ones";
};

void cmd_gw_sample(Context& c, const GwSampleArgs& a) {
    c.config.update({{"n", a.n}, {"count", a.count}});
    if (a.alpha) c.config["alpha"] = *a.alpha;
    else c.config["weights"] = a.weights;
    auto mu = offspring(a.alpha, a.weights);
    check_support(mu, a.n);
    ConditionedSampler sampler(mu, a.n);
    std::vector<std::string> trees;
    for (std::size_t i = 0; i < a.count; ++i) {
        Rng rng(derive_seed(c.g.seed, a.n, i));
        trees.push_back(sampler(rng).to_string());
    }
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        c.emit(json{{"n", a.n}, {"law", mu.name()}, {"trees", trees}});
        return;
    }
    std::ostringstream os;
    for (const auto& t : trees) os << t << "\n";
    c.emit(os.str());
}

struct GwMuArgs {
    std::optional<double> alpha;
    std::string weights = "ones";
    std::optional<double> radius;
    std::size_t head = 10;
};

void cmd_gw_mu(Context& c, const GwMuArgs& a) {
    c.config["head"] = a.head;
    json j;
    std::optional<OffspringDistribution> mu;
    if (a.alpha) {
        c.config["alpha"] = *a.alpha;
        mu = OffspringDistribution::stable(*a.alpha);
        j = {{"alpha", *a.alpha}, {"c", *mu->tail_constant()}};
    } else {
        c.config["weights"] = a.weights;
        if (a.radius) c.config["radius"] = *a.radius;
        auto law = mu_from_weights(FaceWeights::parse(a.weights), a.radius);
        j = {{"weights", a.weights}, {"a", law.a}, {"b", law.b}};
        mu = law.mu;
    }
    std::vector<double> head;
    for (std::size_t k = 0; k < a.head; ++k) head.push_back(mu->pmf(k));
    j["mean"] = mu->mean();
    j["pmf"] = head;
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        c.emit(j);
        return;
    }
    std::ostringstream os;
    os.precision(12);
    if (a.alpha) os << "alpha " << *a.alpha << "\nc " << j["c"].get<double>() << "\n";
    else os << "a " << j["a"].get<double>() << "\nb " << j["b"].get<double>() << "\n";
    os << "mean " << mu->mean() << "\n";
    for (std::size_t k = 0; k < head.size(); ++k) os << "mu(" << k << ") " << head[k] << "\n";
    c.emit(os.str());
}

// halin -------------------------------------------------------------------------

void cmd_halin_build(Context& c, const std::string& tree) {
    c.config["tree"] = tree;
    HalinMap h = build_halin(PlaneTree::parse(tree));
    c.emit(output_halin(c, h));
}

// bij ---------------------------------------------------------------------------

void cmd_bij_phi(Context& c, const std::string& map_file, const std::string& tree) {
    if (!map_file.empty()) c.config["map"] = map_file;
    if (!tree.empty()) c.config["tree"] = tree;
    HalinMap h = halin_from_input(tree, "", map_file);
    MarkedTree t = phi(h);
    auto f = c.format("text", {"text", "json"});
    c.emit(f == "json" ? marked_json(t).dump(2) + "\n" : t.to_string() + "\n");
}

void cmd_bij_inv(Context& c, const std::string& marked) {
    c.config["marked"] = marked;
    c.emit(output_halin(c, phi_inverse(MarkedTree::parse(marked))));
}

struct RoundtripArgs {
    std::size_t n = 0;
    bool exhaustive = false;
    std::size_t count = 1000;
};

void cmd_bij_roundtrip(Context& c, const RoundtripArgs& a) {
    c.config.update({{"n", a.n}, {"exhaustive", a.exhaustive}});
    std::size_t total = 0, good = 0;
    std::vector<std::string> failures;
    if (a.exhaustive) {
        auto maps = enumerate_halin(a.n);
        std::set<MarkedTree> images;
        for (const auto& h : maps) {
            MarkedTree t = phi(h);
            images.insert(t);
            bool ok = phi_inverse(t).tree() == h.tree();
            ++total;
            good += ok;
            if (!ok) failures.push_back(h.tree().to_string());
        }
        auto marked = enumerate_marked(a.n);
        bool onto = images.size() == maps.size() && images == std::set<MarkedTree>(marked.begin(), marked.end());
        if (!onto) failures.push_back("phi is not a bijection onto the marked trees");
        for (const auto& t : marked)
            if (phi(phi_inverse(t)) != t) failures.push_back(t.to_string());
    } else {
        c.config["count"] = a.count;
        auto law = mu_from_weights(FaceWeights::ones());
        ConditionedSampler sampler(law.mu, a.n);
        for (std::size_t i = 0; i < a.count; ++i) {
            Rng rng(derive_seed(c.g.seed, a.n, i));
            MarkedTree t = uniformly_marked(sampler(rng), rng);
            HalinMap h = phi_inverse(t);
            bool ok = phi(h) == t && phi_inverse(phi(h)).tree() == h.tree();
            ++total;
            good += ok;
            if (!ok) failures.push_back(t.to_string());
        }
    }
    bool pass = failures.empty() && good == total;
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        c.emit(json{{"n", a.n}, {"checked", total}, {"ok", good}, {"pass", pass}, {"failures", failures}});
    } else {
        std::ostringstream os;
        os << good << "/" << total << (pass ? " OK" : " FAIL") << "\n";
        for (const auto& s : failures) os << "failure: " << s << "\n";
        c.emit(os.str());
    }
    if (!pass) throw InvariantViolation("round trip failures");
}

void cmd_bij_pushforward(Context& c, std::size_t n, const std::string& weights) {
    c.config.update({{"n", n}, {"weights", weights}});
    auto r = pushforward_distribution(n, FaceWeights::parse(weights));
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        json rows = json::array();
        for (const auto& row : r.rows)
            rows.push_back({{"shape", row.shape.to_string()},
                            {"boltzmann", row.boltzmann.str()},
                            {"gw", row.gw.str()}});
        c.emit(json{{"n", n},
                    {"weights", weights},
                    {"partition_function", r.partition_function.str()},
                    {"rows", rows},
                    {"max_abs_diff", r.max_abs_diff.str()},
                    {"exact_match", r.exact_match}});
    } else {
        std::ostringstream os;
        os << "Z=" << r.partition_function.str() << "\n";
        for (const auto& row : r.rows)
            os << row.shape.to_string() << "  boltzmann=" << row.boltzmann.str() << "  gw=" << row.gw.str()
               << "\n";
        os << "max |diff| = " << r.max_abs_diff.str() << (r.exact_match ? "  EXACT" : "  MISMATCH") << "\n";
        c.emit(os.str());
    }
    if (!r.exact_match) throw InvariantViolation("pushforward differs from the conditioned GW law");
}

// gh ----------------------------------------------------------------------------

void cmd_gh_exact(Context& c, const std::string& fa, const std::string& fb, double budget) {
    c.config.update({{"a", fa}, {"b", fb}, {"budget", budget}});
    auto x = metric_from_csv(read_file(fa));
    auto y = metric_from_csv(read_file(fb));
    auto r = gh_exact(x, y, budget, c.g.threads);
    auto f = c.format("text", {"text", "json"});
    if (f == "json") {
        json pairs = json::array();
        for (auto [i, j] : r.best.pairs) pairs.push_back({i, j});
        c.emit(json{{"gh", r.value}, {"distortion", r.distortion}, {"evaluations", r.evaluations},
                    {"correspondence", pairs}});
    } else {
        std::ostringstream os;
        os << "GH=" << r.value << " distortion=" << r.distortion << " evaluations=" << r.evaluations << "\n";
        c.emit(os.str());
    }
}

struct LemmaArgs {
    std::size_t n = 0;
    bool exhaustive = false;
    std::size_t count = 10;
    double budget = default_gh_budget;
};

void cmd_gh_lemma(Context& c, const LemmaArgs& a) {
    bool exhaustive = a.exhaustive || a.n <= 3;
    c.config.update({{"n", a.n}, {"exhaustive", exhaustive}, {"budget", a.budget}});
    std::vector<HalinMap> maps;
    if (exhaustive) {
        maps = enumerate_halin(a.n);
    } else {
        c.config["count"] = a.count;
        auto law = mu_from_weights(FaceWeights::ones());
        ConditionedSampler sampler(law.mu, a.n);
        for (std::size_t i = 0; i < a.count; ++i) {
            Rng rng(derive_seed(c.g.seed, a.n, i));
            maps.push_back(phi_inverse(uniformly_marked(sampler(rng), rng)));
        }
    }
    LemmaOptions opt;
    opt.budget = a.budget;
    opt.threads = c.g.threads;
    std::size_t good = 0;
    json arr = json::array();
    std::ostringstream os;
    for (const auto& h : maps) {
        auto r = check_lemma_bound(h, opt);
        good += r.ok;
        arr.push_back({{"tree", h.tree().to_string()},
                       {"height", r.height},
                       {"bound", r.bound},
                       {"gh_exact", r.gh_exact ? json(*r.gh_exact) : json(nullptr)},
                       {"gh_lower", r.gh_lower},
                       {"gh_upper", r.gh_upper},
                       {"dis_contraction", r.dis_contraction},
                       {"dis_root_shift", r.dis_root_shift},
                       {"dis_canonical", r.dis_canonical},
                       {"ok", r.ok}});
        os << "tree=" << h.tree().to_string() << " Height=" << r.height << " ";
        if (r.gh_exact) os << "GH=" << *r.gh_exact;
        else os << "GH in [" << r.gh_lower << "," << r.gh_upper << "]";
        os << ", bound=" << r.bound << ", " << (r.ok ? "OK" : "FAIL") << "\n";
    }
    bool pass = good == maps.size();
    os << good << "/" << maps.size() << (pass ? " OK" : " FAIL") << "\n";
    auto f = c.format("text", {"text", "json"});
    c.emit(f == "json" ? json{{"n", a.n}, {"maps", arr}, {"ok", good}, {"pass", pass}}.dump(2) + "\n"
                       : os.str());
    if (!pass) throw InvariantViolation("GH bound violated");
}

// loop --------------------------------------------------------------------------

void cmd_loop_build(Context& c, const std::string& tree) {
    c.config["tree"] = tree;
    PlaneTree t = PlaneTree::parse(tree);
    Graph g = loop(t);
    auto f = c.format("text", {"text", "json", "csv", "dot", "svg"});
    if (f == "dot" || f == "svg") {
        c.emit(render_looptree(t, parse_render_format(f)));
    } else if (f == "csv") {
        c.emit(metric_to_csv(loop_metric(t, c.g.threads)));
    } else if (f == "json") {
        json edges = json::array();
        for (auto [u, v] : g.edges()) edges.push_back({u, v});
        c.emit(json{{"tree", t.to_string()}, {"vertices", t.size()}, {"edges", edges},
                    {"diameter", loop_diameter(t)}});
    } else {
        std::ostringstream os;
        os << "vertices " << t.size() << "\nedges " << g.edge_count() << "\ndiameter " << loop_diameter(t)
           << "\n";
        for (auto [u, v] : g.edges()) os << u << " " << v << "\n";
        c.emit(os.str());
    }
}

// exp ---------------------------------------------------------------------------

struct ScalingArgs {
    double alpha = 1.5;
    std::string sizes;
    std::size_t samples = 200;
    bool halin = false;
    std::size_t halin_max_n = 10000;
    std::string summary;
};

void cmd_exp_scaling(Context& c, const ScalingArgs& a) {
    ScalingRunConfig cfg;
    cfg.alpha = a.alpha;
    cfg.sizes = parse_sizes(a.sizes);
    cfg.samples = a.samples;
    cfg.seed = c.g.seed;
    cfg.halin_diameters = a.halin;
    cfg.halin_max_n = a.halin_max_n;
    cfg.threads = c.g.threads;
    c.config.update({{"alpha", cfg.alpha}, {"sizes", cfg.sizes}, {"samples", cfg.samples},
                     {"halin", cfg.halin_diameters}, {"halin_max_n", cfg.halin_max_n}});
    auto r = scaling_run(cfg);
    auto summary = scaling_summary(r);
    auto f = c.format("csv", {"csv", "json", "text"});
    if (f == "json") {
        c.emit(summary);
    } else {
        c.emit(scaling_csv(r));
        if (!a.summary.empty()) write_atomic(a.summary, summary.dump(2) + "\n");
        else if (!c.g.out.empty()) c.out << summary.dump(2) << "\n";
    }
}

struct ProfileArgs {
    double alpha = 1.5;
    std::string sizes;
    std::size_t samples = 200;
    double final_fraction = 0.9;
};

void cmd_exp_profile(Context& c, const ProfileArgs& a) {
    ProfileConfig cfg;
    cfg.alpha = a.alpha;
    cfg.sizes = parse_sizes(a.sizes);
    cfg.samples = a.samples;
    cfg.seed = c.g.seed;
    cfg.final_fraction = a.final_fraction;
    cfg.threads = c.g.threads;
    c.config.update({{"alpha", cfg.alpha}, {"sizes", cfg.sizes}, {"samples", cfg.samples},
                     {"final_fraction", cfg.final_fraction}});
    c.format("json", {"json", "text"});
    c.emit(profile_json(lukasiewicz_profile(cfg)));
}

// render ------------------------------------------------------------------------

struct RenderArgs {
    std::string object = "halin";
    std::string tree, marked, map;
};

void cmd_render(Context& c, const RenderArgs& a) {
    c.config.update({{"object", a.object}});
    if (!a.tree.empty()) c.config["tree"] = a.tree;
    if (!a.marked.empty()) c.config["marked"] = a.marked;
    if (!a.map.empty()) c.config["map"] = a.map;
    auto f = parse_render_format(c.format("dot", {"dot", "svg"}));
    if (a.object == "halin") {
        c.emit(render_halin(halin_from_input(a.tree, a.marked, a.map), f));
        return;
    }
    PlaneTree t;
    if (!a.tree.empty() && a.marked.empty() && a.map.empty()) t = PlaneTree::parse(a.tree);
    else if (a.tree.empty() && !a.marked.empty() && a.map.empty()) t = MarkedTree::parse(a.marked).shape();
    else throw InvalidInput("trees and looptrees take exactly one of --tree, --marked");
    if (a.object == "tree") c.emit(render_tree(t, f));
    else if (a.object == "loop") c.emit(render_looptree(t, f));
    else throw InvalidInput("unknown object \"" + a.object + "\"");
}

std::uint64_t default_seed() {
    const char* s = std::getenv("HLL_SEED");
    if (!s || !*s) return 42;
    try {
        std::size_t used = 0;
        auto v = std::stoull(s, &used);
        if (s[used] != '\0') throw std::invalid_argument(s);
        return v;
    } catch (const std::logic_error&) {
        throw InvalidInput(std::string("HLL_SEED is not an unsigned integer: ") + s);
    }
}

int report(std::ostream& err, const char* kind, const std::string& msg, int code) {
    err << json{{"error", {{"kind", kind}, {"message", msg}}}, {"exit", code}}.dump() << "\n";
    return code;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Halin maps, marked trees, looptrees and Gromov-Hausdorff checks", "hll"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", version_string());

    Global g;
    std::optional<std::uint64_t> seed;
    std::string format;
    app.add_option("--seed", seed, "random seed (default: $HLL_SEED, else 42)");
    app.add_option("--threads", g.threads, "worker threads, 0 = all cores");
    app.add_option("--out", g.out, "write the result to this file (atomically)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "csv", "dot", "text", "svg"}));

    std::function<void(Context&)> action;
    std::string command;
    auto bind = [&](CLI::App* sub, std::string name, std::function<void(Context&)> fn) {
        sub->fallthrough();
        sub->callback([&action, &command, name, fn] {
            command = name;
            action = fn;
        });
    };

    EnumerateArgs en;
    auto* enumerate = app.add_subcommand("enumerate", "list Halin maps, plane trees or marked trees of size n");
    enumerate->add_option("-n", en.n, "size (bounded faces for Halin maps)")->required();
    enumerate->add_flag("--count-only", en.count_only, "print only the number of objects");
    enumerate->add_option("--kind", en.kind, "halin | trees | marked")
        ->check(CLI::IsMember({"halin", "trees", "marked"}));
    bind(enumerate, "enumerate", [&](Context& c) { cmd_enumerate(c, en); });

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "sample Boltzmann Halin maps with n bounded faces");
    sample->add_option("-n", sa.n, "bounded faces")->required();
    sample->add_option("--count", sa.count, "number of maps");
    sample->add_option("--weights", sa.weights, "ones | linear | table:4=1,6=1/2");
    bind(sample, "sample", [&](Context& c) { cmd_sample(c, sa); });

    auto* halin = app.add_subcommand("halin", "Halin map construction");
    halin->require_subcommand(1);
    halin->fallthrough();
    std::string halin_tree;
    auto* hbuild = halin->add_subcommand("build", "Halin map of a plane tree");
    hbuild->add_option("--tree", halin_tree, "child counts in depth-first order, e.g. \"1 0\"")->required();
    bind(hbuild, "halin build", [&](Context& c) { cmd_halin_build(c, halin_tree); });
    EnumerateArgs hen;
    auto* henum = halin->add_subcommand("enumerate", "list Halin maps with n bounded faces");
    henum->add_option("-n", hen.n, "bounded faces")->required();
    henum->add_flag("--count-only", hen.count_only, "print only the count");
    bind(henum, "halin enumerate", [&](Context& c) { cmd_enumerate(c, hen); });

    auto* gw = app.add_subcommand("gw", "Galton-Watson laws and conditioned sampling");
    gw->require_subcommand(1);
    gw->fallthrough();
    GwSampleArgs gs;
    auto* gsample = gw->add_subcommand("sample", "trees conditioned to have n vertices");
    gsample->add_option("-n", gs.n, "vertices")->required();
    gsample->add_option("--count", gs.count, "number of trees");
    auto* galpha = gsample->add_option("--alpha", gs.alpha, "stable power-law offspring law, alpha in (1,2)");
    gsample->add_option("--weights", gs.weights, "critical law from face weights")->excludes(galpha);
    bind(gsample, "gw sample", [&](Context& c) { cmd_gw_sample(c, gs); });
    GwMuArgs gm;
    auto* gmu = gw->add_subcommand("mu", "critical offspring law");
    auto* malpha = gmu->add_option("--alpha", gm.alpha, "stable power-law law");
    gmu->add_option("--weights", gm.weights, "face weights")->excludes(malpha);
    gmu->add_option("--radius", gm.radius, "radius of convergence of the weight series");
    gmu->add_option("--head", gm.head, "number of masses to print");
    bind(gmu, "gw mu", [&](Context& c) { cmd_gw_mu(c, gm); });

    auto* bij = app.add_subcommand("bij", "bijection between Halin maps and marked trees");
    bij->require_subcommand(1);
    bij->fallthrough();
    std::string phi_map, phi_tree;
    auto* bphi = bij->add_subcommand("phi", "marked tree of a Halin map");
    auto* pm = bphi->add_option("--map", phi_map, "planar map JSON file");
    bphi->add_option("--tree", phi_tree, "underlying tree of the Halin map")->excludes(pm);
    bind(bphi, "bij phi", [&](Context& c) { cmd_bij_phi(c, phi_map, phi_tree); });
    std::string inv_marked;
    auto* binv = bij->add_subcommand("inv", "Halin map of a marked tree");
    binv->add_option("--marked", inv_marked, "tokens k:mark in depth-first order")->required();
    bind(binv, "bij inv", [&](Context& c) { cmd_bij_inv(c, inv_marked); });
    RoundtripArgs rt;
    auto* brt = bij->add_subcommand("roundtrip", "check both compositions are the identity");
    brt->add_option("-n", rt.n, "bounded faces")->required();
    auto* ex = brt->add_flag("--exhaustive", rt.exhaustive, "all maps of size n");
    brt->add_option("--count", rt.count, "random instances")->excludes(ex);
    bind(brt, "bij roundtrip", [&](Context& c) { cmd_bij_roundtrip(c, rt); });
    std::size_t pf_n = 0;
    std::string pf_w = "ones";
    auto* bpf = bij->add_subcommand("pushforward", "exact law of the tree shape vs conditioned GW");
    bpf->add_option("-n", pf_n, "bounded faces")->required();
    bpf->add_option("--weights", pf_w, "face weights");
    bind(bpf, "bij pushforward", [&](Context& c) { cmd_bij_pushforward(c, pf_n, pf_w); });

    auto* gh = app.add_subcommand("gh", "Gromov-Hausdorff distances");
    gh->require_subcommand(1);
    gh->fallthrough();
    std::string gh_a, gh_b;
    double gh_budget = default_gh_budget;
    auto* gex = gh->add_subcommand("exact", "exact distance between two distance matrices");
    gex->add_option("--a", gh_a, "CSV distance matrix")->required();
    gex->add_option("--b", gh_b, "CSV distance matrix")->required();
    gex->add_option("--budget", gh_budget, "maximal number of distortion evaluations");
    bind(gex, "gh exact", [&](Context& c) { cmd_gh_exact(c, gh_a, gh_b, gh_budget); });
    LemmaArgs la;
    auto* glemma = gh->add_subcommand("lemma", "check GH(H, Loop T) <= Height(T) + 3/2");
    glemma->add_option("-n", la.n, "bounded faces")->required();
    auto* lex = glemma->add_flag("--exhaustive", la.exhaustive, "all maps (default for n <= 3)");
    glemma->add_option("--count", la.count, "random maps")->excludes(lex);
    glemma->add_option("--budget", la.budget, "exact GH evaluation budget");
    bind(glemma, "gh lemma", [&](Context& c) { cmd_gh_lemma(c, la); });

    auto* lp = app.add_subcommand("loop", "looptrees");
    lp->require_subcommand(1);
    lp->fallthrough();
    std::string loop_tree;
    auto* lbuild = lp->add_subcommand("build", "looptree of a plane tree");
    lbuild->add_option("--tree", loop_tree, "child counts in depth-first order")->required();
    bind(lbuild, "loop build", [&](Context& c) { cmd_loop_build(c, loop_tree); });

    auto* exp = app.add_subcommand("exp", "scaling experiments");
    exp->require_subcommand(1);
    exp->fallthrough();
    ScalingArgs sc;
    auto* esc = exp->add_subcommand("scaling", "height and looptree diameter of stable GW trees");
    esc->add_option("--alpha", sc.alpha, "tail index in (1,2)");
    esc->add_option("--sizes", sc.sizes, "comma separated, \"...\" continues the pattern")->required();
    esc->add_option("--samples", sc.samples, "samples per size");
    esc->add_flag("--halin", sc.halin, "also record Halin map diameters");
    esc->add_option("--halin-max-n", sc.halin_max_n, "largest n for Halin diameters");
    esc->add_option("--summary", sc.summary, "write the summary JSON to this file");
    bind(esc, "exp scaling", [&](Context& c) { cmd_exp_scaling(c, sc); });
    ProfileArgs pa;
    auto* epr = exp->add_subcommand("profile", "normalized Lukasiewicz path statistics");
    epr->add_option("--alpha", pa.alpha, "tail index in (1,2)");
    epr->add_option("--sizes", pa.sizes, "comma separated sizes")->required();
    epr->add_option("--samples", pa.samples, "samples per size");
    epr->add_option("--final-fraction", pa.final_fraction, "where W is read, as a fraction of n");
    bind(epr, "exp profile", [&](Context& c) { cmd_exp_profile(c, pa); });

    RenderArgs ra;
    auto* rd = app.add_subcommand("render", "DOT or SVG drawings");
    rd->add_option("--object", ra.object, "halin | tree | loop")
        ->check(CLI::IsMember({"halin", "tree", "loop"}));
    rd->add_option("--tree", ra.tree, "plane tree");
    rd->add_option("--marked", ra.marked, "marked tree");
    rd->add_option("--map", ra.map, "planar map JSON file (Halin maps only)");
    bind(rd, "render", [&](Context& c) { cmd_render(c, ra); });

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return report(err, "usage", e.what(), usage);
    }

    json config = {{"command", command}};
    auto fail = [&](const char* kind, const std::string& msg, int code) {
        err << json{{"config", config}}.dump() << "\n";
        return report(err, kind, msg, code);
    };
    try {
        g.seed = seed ? *seed : default_seed();
        g.format = format;
        config = {{"command", command}, {"seed", g.seed}, {"threads", g.threads}, {"version", HLL_VERSION}};
        if (!g.out.empty()) config["out"] = g.out;
        if (!format.empty()) config["format"] = format;
        Context c{g, out, config};
        try {
            action(c);
        } catch (...) {
            config = c.config;
            throw;
        }
        err << json{{"config", c.config}}.dump() << "\n";
        return ok;
    } catch (const BudgetExceeded& e) {
        return fail("budget_exceeded", e.what(), budget);
    } catch (const InvariantViolation& e) {
        return fail("invariant_violation", e.what(), invariant);
    } catch (const InvalidInput& e) {
        return fail("invalid_input", e.what(), usage);
    } catch (const json::exception& e) {
        return fail("invalid_input", e.what(), usage);
    } catch (const std::exception& e) {
        return fail("error", e.what(), failure);
    }
}

} // namespace hll::cli
