// Copyright 2026 The ghzft Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ghzft/cli.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

using namespace ghzft;
using json = nlohmann::ordered_json;

std::optional<std::pair<double, double>> ghzft::default_window(const EncodingSpec &spec) {
    struct Entry {
        EncodingSpec spec;
        double lo;
        double hi;
    };
    static const Entry entries[] = {
        {{1, 1, 2, Variant::shor}, 0.026, 0.040},
        {{1, 2, 2, Variant::shor}, 0.044, 0.062},
        {{2, 2, 2, Variant::shor}, 0.076, 0.096},
        {{4, 2, 2, Variant::rotated}, 0.104, 0.124},
        {{6, 4, 2, Variant::shor}, 0.130, 0.170},
    };
    for (const auto &e : entries) {
        if (e.spec == spec) {
            return std::pair{e.lo, e.hi};
        }
    }
    return std::nullopt;
}

std::vector<EncodingSpec> ghzft::table_encodings(bool include_large) {
    std::vector<EncodingSpec> out{
        {1, 1, 2, Variant::shor},
        {1, 2, 2, Variant::shor},
        {2, 2, 2, Variant::shor},
        {4, 2, 2, Variant::rotated},
    };
    if (include_large) {
        out.push_back({6, 4, 2, Variant::shor});
    }
    return out;
}

std::string ghzft::csv_field(const std::string &text) {
    if (text.find_first_of(",\"\n\r") == std::string::npos) {
        return text;
    }
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + "\"";
}

std::string ghzft::csv_header(bool per_lattice) {
    std::string h = "encoding,variant,model,d,eta,samples,failures,rate,ci_low,ci_high,seed";
    if (per_lattice) {
        h += ",primal_failures,dual_failures";
    }
    return h;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

}  // namespace

std::string ghzft::csv_row(const PointResult &p, bool per_lattice) {
    const PointConfig &c = p.config;
    std::string row = csv_field(c.encoding.to_string()) + "," + std::string(variant_name(c.encoding.variant)) + "," +
                      std::string(model_name(c.model)) + "," + std::to_string(c.distance) + "," + fmt_double(c.eta) +
                      "," + std::to_string(c.samples) + "," + std::to_string(p.failures) + "," + fmt_double(p.rate) +
                      "," + fmt_double(p.ci.low) + "," + fmt_double(p.ci.high) + "," + std::to_string(c.seed);
    if (per_lattice) {
        row += "," + std::to_string(p.primal_failures) + "," + std::to_string(p.dual_failures);
    }
    return row;
}

namespace {

struct Options {
    std::string command;
    std::string encoding = "doubled";
    std::string model = "nl";
    std::optional<int> distance;
    std::vector<int> distances;
    std::vector<double> etas;
    std::optional<double> eta_min;
    std::optional<double> eta_max;
    int eta_steps = 8;
    uint64_t samples = 10000;
    uint64_t seed = kDefaultSeed;
    int workers = 1;
    std::string out;
    std::string format = "csv";
    std::string fixture;
    std::string lattice = "primal";
    bool verify = false;
    bool per_lattice = false;
    bool force = false;
    bool include_large = false;
    int bootstrap = 200;
};

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

void require_odd_distance(int d) {
    if (d % 2 == 0) {
        throw UsageError("distance must be odd");
    }
    if (d < 3) {
        throw UsageError("distance must be at least 3");
    }
}

std::vector<double> eta_grid(const Options &o, std::optional<std::pair<double, double>> fallback) {
    std::vector<double> grid = o.etas;
    if (grid.empty()) {
        std::optional<double> lo = o.eta_min;
        std::optional<double> hi = o.eta_max;
        if (fallback) {
            lo = lo.value_or(fallback->first);
            hi = hi.value_or(fallback->second);
        }
        if (!lo || !hi) {
            throw UsageError("eta grid is empty: pass --eta or both --eta-min and --eta-max");
        }
        if (o.eta_steps < 1) {
            throw UsageError("eta grid is empty: --eta-steps must be at least 1");
        }
        if (*hi < *lo) {
            throw UsageError("--eta-max must not be below --eta-min");
        }
        for (int k = 0; k < o.eta_steps; k++) {
            double t = o.eta_steps == 1 ? 0.0 : double(k) / double(o.eta_steps - 1);
            // Rounded so grids print and hash identically everywhere.
            double v = *lo + t * (*hi - *lo);
            grid.push_back(std::round(v * 1e9) / 1e9);
        }
    }
    if (grid.empty()) {
        throw UsageError("eta grid is empty");
    }
    for (double e : grid) {
        if (!(e >= 0 && e <= 1)) {
            throw UsageError("eta must lie in [0, 1]");
        }
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<int> distance_list(const Options &o) {
    std::vector<int> ds = o.distances;
    if (ds.empty() && o.distance) {
        ds.push_back(*o.distance);
    }
    if (ds.empty()) {
        ds = {7, 9, 11};
    }
    for (int d : ds) {
        require_odd_distance(d);
    }
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    return ds;
}

uint64_t fnv1a64(const std::string &s) {
    uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string iso_now() {
    std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Result-determining configuration. Worker count and output location
/// are excluded because they cannot change any result.
json resolved_config(const Options &o, const json &extra) {
    json j;
    j["command"] = o.command;
    j["model"] = o.model;
    j["samples"] = o.samples;
    j["seed"] = o.seed;
    j["per_lattice"] = o.per_lattice;
    j["bootstrap"] = o.bootstrap;
    for (auto it = extra.begin(); it != extra.end(); ++it) {
        j[it.key()] = it.value();
    }
    return j;
}

class RunContext {
   public:
    RunContext(const Options &o, json config) : options_(o), config_(std::move(config)), started_(iso_now()) {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016llx", (unsigned long long)fnv1a64(config_.dump()));
        hash_ = buf;
        if (!o.out.empty()) {
            std::filesystem::create_directories(o.out);
        }
    }

    const std::string &hash() const {
        return hash_;
    }
    bool has_out() const {
        return !options_.out.empty();
    }
    std::string path(const std::string &name) const {
        return (std::filesystem::path(options_.out) / name).string();
    }

    /// Appends points to DIR/results.csv, writing the header only once.
    void append_csv(const std::vector<PointResult> &points) {
        std::string name = options_.per_lattice ? "results_per_lattice.csv" : "results.csv";
        std::string p = path(name);
        bool fresh = !std::filesystem::exists(p) || std::filesystem::file_size(p) == 0;
        std::ofstream f(p, std::ios::app);
        if (!f) {
            throw std::runtime_error("cannot open " + p);
        }
        if (fresh) {
            f << csv_header(options_.per_lattice) << "\n";
        }
        f << "# manifest " << hash_ << "\n";
        for (const auto &pt : points) {
            f << csv_row(pt, options_.per_lattice) << "\n";
        }
        note_output(p);
    }

    void write_json(const std::string &name, json doc) {
        doc["manifest"] = hash_;
        std::string p = path(name);
        std::ofstream f(p);
        if (!f) {
            throw std::runtime_error("cannot open " + p);
        }
        f << doc.dump(2) << "\n";
        note_output(p);
    }

    void write_text(const std::string &name, const std::string &text) {
        std::string p = path(name);
        std::ofstream f(p);
        if (!f) {
            throw std::runtime_error("cannot open " + p);
        }
        f << "# manifest " << hash_ << "\n" << text;
        note_output(p);
    }

    void finish() {
        if (!has_out()) {
            return;
        }
        json m;
        m["manifest"] = hash_;
        m["tool_version"] = kToolVersion;
        m["config"] = config_;
        m["seed"] = options_.seed;
        m["workers"] = options_.workers;
        m["started"] = started_;
        m["finished"] = iso_now();
        m["outputs"] = outputs_;
        std::ofstream f(path("manifest_" + hash_ + ".json"));
        f << m.dump(2) << "\n";
    }

   private:
    void note_output(const std::string &p) {
        if (std::find(outputs_.begin(), outputs_.end(), p) == outputs_.end()) {
            outputs_.push_back(p);
        }
    }

    const Options &options_;
    json config_;
    std::string started_;
    std::string hash_;
    std::vector<std::string> outputs_;
};

json threshold_json(const EncodingSpec &spec, ModelKind model, const ScanConfig &scan, const ThresholdResult &r) {
    json j;
    j["encoding"] = spec.to_string();
    j["variant"] = variant_name(spec.variant);
    j["photons"] = spec.photons_per_resource_state();
    j["model"] = model_name(model);
    j["distances"] = scan.distances;
    j["etas"] = scan.etas;
    j["samples"] = scan.samples;
    j["seed"] = scan.seed;
    json crossings = json::array();
    for (const auto &c : r.crossings) {
        crossings.push_back({{"d_small", c.d_small}, {"d_large", c.d_large}, {"eta", c.eta}});
    }
    j["crossings"] = crossings;
    j["threshold"] = r.threshold;
    j["uncertainty"] = r.uncertainty;
    j["ci_low"] = r.ci.low;
    j["ci_high"] = r.ci.high;
    j["bootstrap_replicates_used"] = r.bootstrap_used;
    j["wall_time_s"] = r.wall_time_s;
    return j;
}

void emit_points(std::ostream &out, const Options &o, const std::vector<PointResult> &points) {
    if (o.format == "json") {
        json arr = json::array();
        for (const auto &p : points) {
            json j;
            j["encoding"] = p.config.encoding.to_string();
            j["variant"] = variant_name(p.config.encoding.variant);
            j["model"] = model_name(p.config.model);
            j["d"] = p.config.distance;
            j["eta"] = p.config.eta;
            j["samples"] = p.config.samples;
            j["failures"] = p.failures;
            j["rate"] = p.rate;
            j["ci_low"] = p.ci.low;
            j["ci_high"] = p.ci.high;
            j["seed"] = p.config.seed;
            if (o.per_lattice) {
                j["primal_failures"] = p.primal_failures;
                j["dual_failures"] = p.dual_failures;
            }
            arr.push_back(j);
        }
        out << arr.dump(2) << "\n";
        return;
    }
    out << csv_header(o.per_lattice) << "\n";
    for (const auto &p : points) {
        out << csv_row(p, o.per_lattice) << "\n";
    }
}

ScanConfig make_scan(const Options &o, const EncodingSpec &spec, ModelKind model, std::vector<double> etas) {
    ScanConfig scan;
    scan.encoding = spec;
    scan.model = model;
    scan.distances = distance_list(o);
    if (scan.distances.size() < 2) {
        throw UsageError("a threshold scan needs at least two distances");
    }
    scan.etas = std::move(etas);
    scan.samples = o.samples;
    scan.seed = o.seed;
    scan.workers = o.workers;
    scan.force = o.force;
    scan.bootstrap_replicates = o.bootstrap;
    return scan;
}

int cmd_returnprob(const Options &o, std::ostream &out, std::ostream &err) {
    EncodingSpec spec = EncodingSpec::parse(o.encoding);
    ModelKind model = parse_model(o.model);
    std::vector<double> etas = o.etas;
    if (etas.empty() && !o.eta_min && !o.eta_max) {
        etas = {0, 0.05, 0.1, 0.2, 0.5};
    }
    Options grid_opts = o;
    grid_opts.etas = etas;
    etas = eta_grid(grid_opts, std::nullopt);

    bool all_match = true;
    json rows = json::array();
    if (o.format == "csv") {
        out << "encoding,variant,model,eta,p_zz,p_xx";
        if (o.verify) {
            out << ",oracle_p_zz,oracle_p_xx,oracle";
        }
        out << "\n";
    }
    constexpr double kOracleTolerance = 1e-12;
    for (double eta : etas) {
        LossModel lm(eta, model);
        ReturnProbabilities a = analytic_return_prob(spec, lm);
        char buf[128];
        std::snprintf(buf, sizeof(buf), "%.8f,%.8f", a.p_zz, a.p_xx);
        json row{{"eta", eta}, {"p_zz", a.p_zz}, {"p_xx", a.p_xx}};
        std::string line = csv_field(spec.to_string()) + "," + std::string(variant_name(spec.variant)) + "," +
                           std::string(model_name(model)) + "," + fmt_double(eta) + "," + buf;
        if (o.verify) {
            ReturnProbabilities b = brute_force_return_prob(spec, lm);
            bool match = std::abs(a.p_zz - b.p_zz) <= kOracleTolerance && std::abs(a.p_xx - b.p_xx) <= kOracleTolerance;
            all_match &= match;
            std::snprintf(buf, sizeof(buf), ",%.8f,%.8f,%s", b.p_zz, b.p_xx, match ? "match" : "MISMATCH");
            line += buf;
            row["oracle_p_zz"] = b.p_zz;
            row["oracle_p_xx"] = b.p_xx;
            row["oracle_match"] = match;
        }
        rows.push_back(row);
        if (o.format == "csv") {
            out << line << "\n";
        }
    }
    if (o.format == "json") {
        json doc{{"encoding", spec.to_string()}, {"model", model_name(model)}, {"rows", rows}};
        out << doc.dump(2) << "\n";
    }
    if (o.verify) {
        if (!all_match) {
            err << "error: closed form and enumeration disagree beyond 1e-12\n";
            return kExitInvariant;
        }
        if (o.format == "csv") {
            out << "# oracle match\n";
        }
    }
    return kExitOk;
}

std::string describe_checks(const GhzNetwork &net, const std::vector<Check> &checks) {
    std::ostringstream s;
    for (size_t i = 0; i < checks.size(); i++) {
        s << "check " << i << " parity " << (checks[i].parity > 0 ? "+1" : "-1") << " :";
        for (int o : checks[i].outcomes) {
            s << " " << describe_outcome(net, o);
        }
        s << "\n";
    }
    return s.str();
}

json checks_json(const GhzNetwork &net, const std::vector<Check> &checks) {
    json arr = json::array();
    for (const auto &c : checks) {
        json names = json::array();
        for (int o : c.outcomes) {
            names.push_back(describe_outcome(net, o));
        }
        arr.push_back({{"parity", c.parity}, {"outcomes", names}});
    }
    return arr;
}

Lattice parse_lattice(const std::string &s) {
    if (s == "primal") {
        return Lattice::primal;
    }
    if (s == "dual") {
        return Lattice::dual;
    }
    throw UsageError("lattice must be 'primal' or 'dual'");
}

int cmd_checks(const Options &o, std::ostream &out, RunContext &ctx) {
    std::string text;
    json doc;
    if (o.fixture == "diamond") {
        Lattice l = parse_lattice(o.lattice);
        GhzNetwork net = GhzNetwork::from_box({{-2, -2, -2}, {2, 2, 2}});
        Coord where = l == Lattice::primal ? Coord{1, 0, 0} : Coord{0, 1, 1};
        auto checks = derive_check_group(Fragment::single_site(net, *net.site_at(where)));
        text = "# diamond check at " + to_string(where) + " (" + std::string(lattice_name(l)) + ")\n" +
               describe_checks(net, checks);
        doc = {{"fixture", "diamond"}, {"lattice", lattice_name(l)}, {"site", to_string(where)},
               {"checks", checks_json(net, checks)}};
    } else if (o.fixture == "unitcell") {
        std::ostringstream s;
        json cells = json::array();
        for (Lattice l : {Lattice::primal, Lattice::dual}) {
            const CellTemplate &t = cell_template(l);
            int xp = 0;
            json entries = json::array();
            for (const auto &e : t.entries) {
                xp += e.xprod;
            }
            s << "# " << lattice_name(l) << " cell check: parity " << (t.parity > 0 ? "+1" : "-1") << ", " << xp
              << " XPROD + " << (t.entries.size() - xp) << " ZZ\n";
            for (const auto &e : t.entries) {
                std::string name = (e.xprod ? "XPROD" : "ZZ") + to_string(e.offset);
                if (!e.xprod) {
                    name += std::string("[") + (e.dir_a.sign > 0 ? '+' : '-') + char('x' + e.dir_a.axis) + "," +
                            (e.dir_b.sign > 0 ? '+' : '-') + char('x' + e.dir_b.axis) + "]";
                }
                s << name << "\n";
                entries.push_back(name);
            }
            cells.push_back({{"lattice", lattice_name(l)}, {"parity", t.parity}, {"entries", entries}});
        }
        text = s.str();
        doc = {{"fixture", "unitcell"}, {"cells", cells}};
    } else if (o.fixture == "slice") {
        GhzNetwork net = GhzNetwork::from_box({{0, 0, 0}, {4, 4, 0}});
        auto checks = derive_check_group(Fragment::whole(net));
        text = "# planar slice z = 0 of a 5x5 box\n" + describe_checks(net, checks);
        doc = {{"fixture", "slice"}, {"checks", checks_json(net, checks)}};
    } else if (o.fixture.empty()) {
        if (!o.distance) {
            throw UsageError("checks needs --fixture diamond|unitcell|slice or --distance");
        }
        require_odd_distance(*o.distance);
        GhzNetwork net = GhzNetwork::build(*o.distance);
        SyndromeGraphs g = build_syndrome_graphs(net);
        for (Lattice l : {Lattice::primal, Lattice::dual}) {
            std::string dump = dump_graph(net, g[l]);
            if (ctx.has_out()) {
                ctx.write_text("graph_" + std::string(lattice_name(l)) + "_d" + std::to_string(*o.distance) + ".txt", dump);
            } else {
                out << dump;
            }
        }
        return kExitOk;
    } else {
        throw UsageError("unknown fixture '" + o.fixture + "': expected diamond, unitcell or slice");
    }
    if (o.format == "json") {
        out << doc.dump(2) << "\n";
    } else {
        out << text;
    }
    if (ctx.has_out()) {
        ctx.write_json("checks_" + o.fixture + ".json", doc);
    }
    return kExitOk;
}

int cmd_simulate(const Options &o, std::ostream &out, RunContext &ctx) {
    EncodingSpec spec = EncodingSpec::parse(o.encoding);
    ModelKind model = parse_model(o.model);
    int d = o.distance ? *o.distance : (o.distances.size() == 1 ? o.distances[0] : -1);
    if (d < 0) {
        throw UsageError("simulate needs a single --distance");
    }
    require_odd_distance(d);
    std::vector<double> etas = eta_grid(o, std::nullopt);
    ScanConfig probe;
    probe.distances = {d};
    probe.etas = etas;
    probe.samples = o.samples;
    double work = scan_work(probe);
    if (!o.force && work > kDefaultWorkCap) {
        throw WorkCapError("simulation needs about " + fmt_double(work) + " Bell draws; pass --force to run it");
    }
    LatticeSampler sampler(d);
    std::vector<PointResult> points;
    for (double eta : etas) {
        PointConfig pc{spec, model, d, eta, o.samples, o.seed, o.workers};
        points.push_back(estimate_logical_loss(pc, sampler));
    }
    emit_points(out, o, points);
    if (ctx.has_out()) {
        ctx.append_csv(points);
    }
    return kExitOk;
}

std::string percent(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f%%", 100 * v);
    return buf;
}

int cmd_threshold(const Options &o, std::ostream &out, std::ostream &err, RunContext &ctx) {
    EncodingSpec spec = EncodingSpec::parse(o.encoding);
    ModelKind model = parse_model(o.model);
    auto window = model == ModelKind::nl ? default_window(spec) : std::nullopt;
    ScanConfig scan = make_scan(o, spec, model, eta_grid(o, window));
    auto start = std::chrono::steady_clock::now();
    std::vector<PointResult> points = run_scan_points(scan);
    if (ctx.has_out()) {
        ctx.append_csv(points);
    }
    ThresholdResult r;
    try {
        r = analyse_points(points, scan);
    } catch (const NoCrossingError &e) {
        emit_points(out, o, points);
        err << "error: " << e.what();
        return kExitInvariant;
    }
    r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json doc = threshold_json(spec, model, scan, r);
    if (o.format == "json") {
        out << doc.dump(2) << "\n";
    } else {
        emit_points(out, o, points);
        out << "# threshold " << spec.to_string() << " " << model_name(model) << " " << percent(r.threshold)
            << " +- " << percent(r.uncertainty) << "\n";
    }
    if (ctx.has_out()) {
        ctx.write_json("threshold.json", doc);
    }
    return kExitOk;
}

int cmd_table1(const Options &o, std::ostream &out, std::ostream &err, RunContext &ctx) {
    ModelKind model = parse_model(o.model);
    json results = json::array();
    int status = kExitOk;
    std::vector<ScanConfig> scans;
    for (const EncodingSpec &spec : table_encodings(o.include_large)) {
        scans.push_back(make_scan(o, spec, model, eta_grid(o, default_window(spec))));
    }
    if (!o.force) {
        double work = 0;
        for (const auto &s : scans) {
            work += scan_work(s);
        }
        if (work > kDefaultWorkCap) {
            throw WorkCapError("table needs about " + fmt_double(work) + " Bell draws; pass --force to run it");
        }
    }
    for (ScanConfig &scan : scans) {
        auto start = std::chrono::steady_clock::now();
        std::vector<PointResult> points = run_scan_points(scan);
        if (ctx.has_out()) {
            ctx.append_csv(points);
        }
        json doc;
        try {
            ThresholdResult r = analyse_points(points, scan);
            r.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            doc = threshold_json(scan.encoding, model, scan, r);
            if (o.format == "csv") {
                out << scan.encoding.to_string() << " photons=" << scan.encoding.photons_per_resource_state()
                    << " threshold=" << percent(r.threshold) << " +- " << percent(r.uncertainty) << "\n";
            }
        } catch (const NoCrossingError &e) {
            doc = {{"encoding", scan.encoding.to_string()}, {"model", model_name(model)}, {"error", e.what()}};
            err << "error: " << scan.encoding.to_string() << ": " << e.what();
            status = kExitInvariant;
        }
        results.push_back(doc);
    }
    if (o.format == "json") {
        out << json{{"results", results}}.dump(2) << "\n";
    }
    if (ctx.has_out()) {
        ctx.write_json("table1.json", json{{"results", results}});
    }
    return status;
}

int cmd_compare(const Options &o, std::ostream &out, std::ostream &err, RunContext &ctx) {
    EncodingSpec spec = EncodingSpec::parse(o.encoding);
    auto window = default_window(spec);
    std::vector<double> nl_etas = eta_grid(o, window);
    // The LO curves sit below the NL ones, so their window starts at zero
    // and reaches the top of the NL window.
    Options lo_opts = o;
    if (o.etas.empty()) {
        lo_opts.eta_min = 0.0;
        lo_opts.eta_max = nl_etas.back();
    }
    std::vector<double> lo_etas = eta_grid(lo_opts, std::nullopt);

    json doc;
    doc["encoding"] = spec.to_string();
    std::optional<ThresholdResult> nl;
    std::optional<Interval> lo_ci;
    for (ModelKind model : {ModelKind::nl, ModelKind::lo}) {
        ScanConfig scan = make_scan(o, spec, model, model == ModelKind::nl ? nl_etas : lo_etas);
        auto points = run_scan_points(scan);
        if (ctx.has_out()) {
            ctx.append_csv(points);
        }
        json entry;
        try {
            ThresholdResult r = analyse_points(points, scan);
            entry = threshold_json(spec, model, scan, r);
            if (model == ModelKind::nl) {
                nl = r;
            } else {
                lo_ci = r.ci;
            }
        } catch (const NoCrossingError &e) {
            // No crossing with a window that starts at zero loss and larger
            // distances never doing better there: no positive threshold.
            bool no_positive = scan.etas.front() == 0.0;
            for (size_t k = 0; no_positive && k + 1 < scan.distances.size(); k++) {
                const PointResult *small = nullptr;
                const PointResult *large = nullptr;
                for (const auto &p : points) {
                    if (p.config.eta == 0.0 && p.config.distance == scan.distances[k]) {
                        small = &p;
                    }
                    if (p.config.eta == 0.0 && p.config.distance == scan.distances[k + 1]) {
                        large = &p;
                    }
                }
                no_positive = small && large && large->rate >= small->rate && small->rate > 0;
            }
            if (model == ModelKind::lo && no_positive) {
                entry = {{"encoding", spec.to_string()}, {"model", "lo"}, {"threshold", 0.0}, {"uncertainty", 0.0},
                         {"ci_low", 0.0}, {"ci_high", 0.0}, {"no_positive_threshold", true}};
                lo_ci = Interval{0, 0};
            } else {
                err << "error: " << model_name(model) << ": " << e.what();
                return kExitInvariant;
            }
        }
        doc[std::string(model_name(model))] = entry;
    }
    bool ordered = nl && lo_ci && nl->ci.low > lo_ci->high;
    doc["nl_above_lo_95"] = ordered;
    out << doc.dump(2) << "\n";
    if (ctx.has_out()) {
        ctx.write_json("compare.json", doc);
    }
    return kExitOk;
}

}  // namespace

int ghzft::run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    Options o;
    CLI::App app{"Loss-threshold toolkit for networked GHZ-measurement surface codes", "ghzft"};
    app.set_version_flag("--version", kToolVersion);
    app.set_config("--config", "", "Flat key = value file mirroring the long flags; flags win");
    app.allow_config_extras(CLI::config_extras_mode::error);
    app.require_subcommand(1, 1);

    app.add_option("--encoding", o.encoding, "doubled, qpc:n,m or qpc:n,m,rotated");
    app.add_option("--model", o.model, "nl or lo")->check(CLI::IsMember({"nl", "lo"}));
    app.add_option("--distance", o.distance, "Code distance (odd)");
    app.add_option("--distances", o.distances, "Comma separated code distances")->delimiter(',');
    app.add_option("--eta", o.etas, "Loss per photon; comma separated for several")->delimiter(',');
    app.add_option("--eta-min", o.eta_min, "Lower end of the loss grid");
    app.add_option("--eta-max", o.eta_max, "Upper end of the loss grid");
    app.add_option("--eta-steps", o.eta_steps, "Points in the loss grid");
    app.add_option("--samples", o.samples, "Monte Carlo samples per point")->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Master seed");
    app.add_option("--workers", o.workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--out", o.out, "Output directory");
    app.add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--fixture", o.fixture, "checks: diamond, unitcell or slice");
    app.add_option("--lattice", o.lattice, "checks: primal or dual")->check(CLI::IsMember({"primal", "dual"}));
    app.add_option("--bootstrap", o.bootstrap, "Bootstrap replicates for threshold intervals")
        ->check(CLI::NonNegativeNumber);
    app.add_flag("--verify", o.verify, "returnprob: compare with exhaustive enumeration");
    app.add_flag("--per-lattice", o.per_lattice, "Report primal and dual failures separately");
    app.add_flag("--force", o.force, "Run even above the work cap");
    app.add_flag("--include-large", o.include_large, "table1: add the 96-photon encoding");

    const char *commands[][2] = {
        {"returnprob", "Tabulate encoded Bell return probabilities"},
        {"checks", "Derive check operators and dump syndrome graphs"},
        {"simulate", "Estimate the logical loss rate at one distance"},
        {"threshold", "Scan loss rates and locate the threshold"},
        {"table1", "Thresholds of the standard encodings"},
        {"compare", "NL against LO thresholds for one encoding"},
    };
    for (auto &c : commands) {
        app.add_subcommand(c[0], c[1])->fallthrough();
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }
    o.command = app.get_subcommands().front()->get_name();

    try {
        json extra;
        extra["encoding"] = o.encoding;
        extra["distance"] = o.distance ? json(*o.distance) : json(nullptr);
        extra["distances"] = o.distances;
        extra["etas"] = o.etas;
        extra["eta_min"] = o.eta_min ? json(*o.eta_min) : json(nullptr);
        extra["eta_max"] = o.eta_max ? json(*o.eta_max) : json(nullptr);
        extra["eta_steps"] = o.eta_steps;
        extra["fixture"] = o.fixture;
        extra["lattice"] = o.lattice;
        extra["include_large"] = o.include_large;
        RunContext ctx(o, resolved_config(o, extra));
        int code = kExitOk;
        if (o.command == "returnprob") {
            code = cmd_returnprob(o, out, err);
        } else if (o.command == "checks") {
            code = cmd_checks(o, out, ctx);
        } else if (o.command == "simulate") {
            code = cmd_simulate(o, out, ctx);
        } else if (o.command == "threshold") {
            code = cmd_threshold(o, out, err, ctx);
        } else if (o.command == "table1") {
            code = cmd_table1(o, out, err, ctx);
        } else {
            code = cmd_compare(o, out, err, ctx);
        }
        ctx.finish();
        return code;
    } catch (const WorkCapError &e) {
        err << "error: " << e.what() << "\n";
        return kExitWorkCap;
    } catch (const InvariantError &e) {
        err << "error: invariant violated: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const ResourceError &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument &e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception &e) {
        err << "error: " << e.what() << "\n";
        return kExitInvariant;
    }
}
