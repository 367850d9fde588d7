// SPDX-License-Identifier: Apache-2.0

#include "rismimo/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace rismimo {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

class KeyValueReader {
public:
    explicit KeyValueReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const auto eq = line.find('=');
            if (eq == std::string::npos) {
                std::ostringstream os;
                os << "line " << lineno;
                throw ConfigError(os.str(), "expected `key = value`");
            }
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty()) {
                std::ostringstream os;
                os << "line " << lineno;
                throw ConfigError(os.str(), "empty key");
            }
            if (!entries_.emplace(key, value).second) {
                throw ConfigError(key, "duplicate key");
            }
        }
    }

    double number(const std::string& key, double fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        consumed_.insert(it->first);
        return parse_number(key, it->second);
    }

    long integer(const std::string& key, long fallback) {
        const double v = number(key, static_cast<double>(fallback));
        const long r = static_cast<long>(v);
        if (static_cast<double>(r) != v) throw ConfigError(key, "expected an integer");
        return r;
    }

    Position position(const std::string& key, Position fallback) {
        const auto it = entries_.find(key);
        if (it == entries_.end()) return fallback;
        consumed_.insert(it->first);
        std::istringstream in(it->second);
        Position p;
        if (!(in >> p.x >> p.y)) throw ConfigError(key, "expected two numbers `x y`");
        std::string rest;
        if (in >> rest) throw ConfigError(key, "trailing content after `x y`");
        return p;
    }

    void check_all_consumed() const {
        for (const auto& [key, value] : entries_) {
            if (!consumed_.count(key)) throw ConfigError(key, "unknown key");
        }
    }

private:
    static double parse_number(const std::string& key, const std::string& text) {
        std::istringstream in(text);
        double v = 0.0;
        if (!(in >> v)) throw ConfigError(key, "expected a number, got `" + text + "`");
        std::string rest;
        if (in >> rest) throw ConfigError(key, "trailing content after number");
        return v;
    }

    std::map<std::string, std::string> entries_;
    std::set<std::string> consumed_;
};

void read_geometry(KeyValueReader& kv, const std::string& prefix, ArrayGeometry& g) {
    g.ds = kv.number(prefix + ".ds", g.ds);
    g.eta_deg = kv.number(prefix + ".eta_deg", g.eta_deg);
    g.delta_deg = kv.number(prefix + ".delta_deg", g.delta_deg);
    if (!(g.ds > 0.0)) throw ConfigError(prefix + ".ds", "must be positive");
    if (!(g.delta_deg > 0.0)) throw ConfigError(prefix + ".delta_deg", "must be positive");
    if (g.eta_deg < -180.0 || g.eta_deg > 180.0) {
        throw ConfigError(prefix + ".eta_deg", "must lie in [-180, 180]");
    }
}

}  // namespace

Scenario load_scenario_text(const std::string& text) {
    KeyValueReader kv(text);
    Scenario s;
    ScenarioConfig& c = s.channel;

    c.dims.n = static_cast<int>(kv.integer("dims.n", c.dims.n));
    c.dims.l = static_cast<int>(kv.integer("dims.l", c.dims.l));
    c.dims.k = static_cast<int>(kv.integer("dims.k", c.dims.k));
    if (c.dims.n < 1) throw ConfigError("dims.n", "must be >= 1");
    if (c.dims.l < 1) throw ConfigError("dims.l", "must be >= 1");
    if (c.dims.k < 1) throw ConfigError("dims.k", "must be >= 1");

    c.bs = kv.position("geometry.bs", c.bs);
    c.ris = kv.position("geometry.ris", c.ris);
    c.user = kv.position("geometry.user", c.user);
    auto same = [](const Position& a, const Position& b) { return a.x == b.x && a.y == b.y; };
    if (same(c.bs, c.ris) || same(c.bs, c.user) || same(c.ris, c.user)) {
        throw ConfigError("geometry", "positions must be pairwise distinct");
    }

    c.p_dbm = kv.number("power.p_dbm", c.p_dbm);
    c.noise_dbm = kv.number("power.noise_dbm", c.noise_dbm);
    c.bandwidth_hz = kv.number("power.bandwidth_hz", c.bandwidth_hz);
    c.budget_override = kv.number("power.budget", c.budget_override);
    c.gt_dbi = kv.number("gains.gt_dbi", c.gt_dbi);
    c.gr_dbi = kv.number("gains.gr_dbi", c.gr_dbi);
    for (int i = 0; i < 3; ++i) {
        const std::string key = "rician.kappa" + std::to_string(i);
        c.kappa[i] = kv.number(key, c.kappa[i]);
        if (c.kappa[i] < 0.0) throw ConfigError(key, "must be >= 0");
    }
    for (int i = 0; i < 3; ++i) {
        const std::string base = "arrays.link" + std::to_string(i);
        read_geometry(kv, base + ".rx", c.rx[i]);
        read_geometry(kv, base + ".tx", c.tx[i]);
    }
    c.mc_trials = kv.integer("mc.trials", c.mc_trials);
    if (c.mc_trials < 1) throw ConfigError("mc.trials", "must be >= 1");
    const long seed = kv.integer("mc.seed", static_cast<long>(c.seed));
    if (seed < 0) throw ConfigError("mc.seed", "must be >= 0");
    c.seed = static_cast<std::uint64_t>(seed);
    c.debug_trace_scale = kv.number("debug.trace_scale", c.debug_trace_scale);
    if (!(c.debug_trace_scale > 0.0)) throw ConfigError("debug.trace_scale", "must be positive");

    s.opt.epsilon = kv.number("opt.epsilon", s.opt.epsilon);
    if (!(s.opt.epsilon > 0.0)) throw ConfigError("opt.epsilon", "must be positive");
    s.opt.restarts = static_cast<int>(kv.integer("opt.restarts", s.opt.restarts));
    if (s.opt.restarts < 1) throw ConfigError("opt.restarts", "must be >= 1");
    s.opt.max_outer = static_cast<int>(kv.integer("opt.max_outer", s.opt.max_outer));
    if (s.opt.max_outer < 1) throw ConfigError("opt.max_outer", "must be >= 1");
    s.opt.phase_step = kv.number("opt.phase_step", s.opt.phase_step);
    if (!(s.opt.phase_step > 0.0)) throw ConfigError("opt.phase_step", "must be positive");

    kv.check_all_consumed();
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path, "cannot open config file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_scenario_text(buf.str());
}

std::string default_scenario_text() {
    return R"(# Reference scenario
dims.n = 8
dims.l = 8
dims.k = 8

geometry.bs = 0 10
geometry.ris = 40 10
geometry.user = 80 10

power.p_dbm = 10
power.noise_dbm = -94
power.bandwidth_hz = 10e6
# power.budget = <watts>   # optional; default is N * 10^((p_dbm - 30)/10)

gains.gt_dbi = 5
gains.gr_dbi = 5

rician.kappa0 = 1
rician.kappa1 = 1
rician.kappa2 = 1

arrays.link0.rx.ds = 1
arrays.link0.rx.eta_deg = 0
arrays.link0.rx.delta_deg = 30
arrays.link0.tx.ds = 1
arrays.link0.tx.eta_deg = 10
arrays.link0.tx.delta_deg = 5
arrays.link1.rx.ds = 1
arrays.link1.rx.eta_deg = 0
arrays.link1.rx.delta_deg = 20
arrays.link1.tx.ds = 1
arrays.link1.tx.eta_deg = 0
arrays.link1.tx.delta_deg = 5
arrays.link2.rx.ds = 1
arrays.link2.rx.eta_deg = 0
arrays.link2.rx.delta_deg = 5
arrays.link2.tx.ds = 1
arrays.link2.tx.eta_deg = 0
arrays.link2.tx.delta_deg = 30

mc.trials = 2000
mc.seed = 1

opt.epsilon = 1e-5
opt.restarts = 3
opt.max_outer = 100
opt.phase_step = 0.1
)";
}

}  // namespace rismimo
