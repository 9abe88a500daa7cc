#include "qc/runner.hpp"

#include "qc/atlas.hpp"
#include "qc/cone.hpp"
#include "qc/errors.hpp"
#include "qc/sampling.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

namespace qc {

namespace {

using json = nlohmann::ordered_json;

const std::vector<std::string> kRetryKinds = {"SingularSystem", "ValuePartZero", "DivisionByZero",
                                              "DegenerateStructure"};

bool retryable(const std::string& kind) {
    return std::find(kRetryKinds.begin(), kRetryKinds.end(), kind) != kRetryKinds.end();
}

bool retryable_check(const Check& c) {
    if (c.status != Status::Error) return false;
    for (const auto& k : kRetryKinds)
        if (c.witness.rfind(k + ":", 0) == 0) return true;
    return false;
}

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

bool failing(const Check& c) { return c.status == Status::Error || (c.expect_zero && c.status != Status::Zero); }

struct PointRecord {
    std::vector<Rational> coords;
    std::optional<std::string> s;
    std::optional<std::string> scal;
    CheckList checks;
    CheckList cone;
    std::optional<Rational> tvalue;
    std::optional<int> sasakian_epsilon;
    std::vector<std::string> retries;
    std::optional<Classification> classification;
    bool s_constant = false;
};

void prescreen(CheckList& cl, const QcChart& chart, const std::vector<Rational>& point, const RunConfig& cfg,
               const CheckList& exact) {
    CheckList fast;
    try {
        const auto fr = build_frame<ModP>(chart, point, cfg.jet_order);
        fast = identity_suite(fr, cfg.suites).checks;
    } catch (const Error& e) {
        cl.error("prescreen.frame", e.kind() + ": " + e.what());
        return;
    }
    std::map<std::string, Status> rational;
    for (const auto& c : exact.checks()) rational.emplace(c.name, c.status);
    std::string mismatched;
    for (const auto& c : fast.checks()) {
        auto it = rational.find(c.name);
        if (it == rational.end() || it->second == c.status) continue;
        mismatched += (mismatched.empty() ? "" : ", ") + c.name + " (mod p " + status_name(c.status) +
                      ", exact " + status_name(it->second) + ")";
    }
    if (mismatched.empty())
        cl.holds("prescreen.agreement", true, {});
    else
        cl.error("prescreen.agreement", "status mismatch: " + mismatched);
}

Rational value_of(const FormJet<Rational>& a, IndexMask m) { return a.component(m).value(); }

void cone_suite(PointRecord& rec, const QcPointFrame<Rational>& fr, const QcChart& chart,
                const std::optional<PointAnalysis<Rational>>& pa) {
    CheckList& cl = rec.cone;
    const auto sas = sasakian_check(fr);
    rec.sasakian_epsilon = sas.epsilon;
    for (int l = 0; l < 3; ++l) {
        const auto tag = std::to_string(l + 1);
        cl.residual("cone.sasakian_plus." + tag, sas.plus[l], false);
        cl.residual("cone.sasakian_minus." + tag, sas.minus[l], false);
    }
    const int eps = sas.epsilon.value_or(chart.epsilon.value_or(1));
    const Rational t = *rec.tvalue;
    const auto cone = cone_structures(fr, t, eps);
    cl.holds("cone.signature", cone_signature_ok(cone, fr.n), "cone metric has the wrong inertia");
    const auto opposite = cone_structures(fr, t, -eps);
    cl.holds("cone.signature_opposite", cone_signature_ok(opposite, fr.n),
             "cone metric with the opposite sign has the wrong inertia");

    const auto hk = hyperkahler_check(cone);
    const bool matches = sas.epsilon && *sas.epsilon == eps;
    bool closed = true;
    for (int l = 0; l < 3; ++l) {
        cl.residual("cone.dF." + std::to_string(l + 1), hk.dFi[l], matches);
        closed = closed && hk.dFi[l].is_zero();
    }
    bool cancels = false;
    if (pa && pa->classification)
        cancels = pa->classification->dOmega_zero && rec.s_constant && pa->s.value() == Rational(2 * eps);
    cl.residual("cone.dF4", hk.dF, matches || cancels);
    cl.residual("cone.leibniz", hk.leibniz);
    cl.holds("cone.closed_iff_sasakian", closed == matches,
             std::string("closed=") + (closed ? "true" : "false") + " sasakian=" + (matches ? "true" : "false"));
    if (sas.epsilon && pa)
        cl.holds("cone.s_equals_2eps", pa->s.value() == Rational(2 * *sas.epsilon),
                 "s = " + to_string(pa->s.value()));

    // t -> c t pulls F_i back to c^2 F_i.
    const Rational c(2);
    const auto scaled = cone_structures(fr, t * c, eps);
    const auto hk_scaled = hyperkahler_check(scaled);
    const int tvar = fr.dim();
    std::string why;
    for (int l = 0; l < 3 && why.empty(); ++l) {
        std::vector<IndexMask> masks;
        for (const auto& [m, _] : cone.Fi[l].components()) masks.push_back(m);
        for (const auto& [m, _] : scaled.Fi[l].components()) masks.push_back(m);
        for (auto m : masks) {
            Rational lhs = value_of(scaled.Fi[l], m);
            if (m & (IndexMask(1) << tvar)) lhs *= c;
            if (lhs != c * c * value_of(cone.Fi[l], m)) {
                why = "F_" + std::to_string(l + 1) + " component dx" + std::to_string(m) + " does not scale by c^2";
                break;
            }
        }
        if (why.empty() && hk_scaled.dFi[l].is_zero() != hk.dFi[l].is_zero())
            why = "dF_" + std::to_string(l + 1) + " verdict changes under t -> 2t";
    }
    if (why.empty() && hk_scaled.dF.is_zero() != hk.dF.is_zero()) why = "dF verdict changes under t -> 2t";
    cl.holds("cone.scaling", why.empty(), why);
}

PointRecord run_point(const QcChart& chart, const RunConfig& cfg, int index) {
    PointRecord rec;
    PointSampler sampler(splitmix(cfg.seed ^ splitmix(static_cast<std::uint64_t>(index))), cfg.coeff_bound);
    const bool analyse = cfg.suites.structure || cfg.suites.torsion || cfg.suites.theorem || cfg.jet_order >= 3;
    for (int attempt = 0;; ++attempt) {
        auto retries = std::move(rec.retries);
        rec = PointRecord{};
        rec.retries = std::move(retries);
        rec.coords = sampler.next_point(chart.dimension());
        Rational t = sampler.next_rational();
        if (sgn(t) < 0) t = -t;
        rec.tvalue = t + Rational(1);
        const bool last = attempt >= cfg.retries;
        auto note = [&](const std::string& what) {
            rec.retries.push_back("attempt " + std::to_string(attempt + 1) + ": " + what);
        };
        QcPointFrame<Rational> fr;
        try {
            fr = build_frame<Rational>(chart, rec.coords, cfg.jet_order);
        } catch (const Error& e) {
            if (retryable(e.kind()) && !last) {
                note(e.kind() + ": " + e.what());
                continue;
            }
            rec.checks.error("frame", e.kind() + ": " + e.what());
            return rec;
        }

        std::optional<PointAnalysis<Rational>> pa;
        if (analyse) {
            pa = identity_suite(fr, cfg.suites);
            const auto& list = pa->checks.checks();
            auto bad = std::find_if(list.begin(), list.end(), retryable_check);
            if (bad != list.end() && !last) {
                note(bad->name + ": " + bad->witness);
                continue;
            }
            rec.checks = pa->checks;
            rec.classification = pa->classification;
            if (pa->classification) {
                rec.s = to_string(pa->s.value());
                rec.scal = to_string(pa->scal.value());
                try {
                    rec.s_constant = differential(pa->s).truncated(0).is_zero();
                } catch (const Error&) {
                    rec.s_constant = false;
                }
            }
            if (cfg.prescreen) prescreen(rec.checks, chart, rec.coords, cfg, pa->checks);
        }
        if (cfg.cone) {
            try {
                cone_suite(rec, fr, chart, pa);
            } catch (const Error& e) {
                if (retryable(e.kind()) && !last) {
                    note("cone: " + e.kind() + ": " + e.what());
                    continue;
                }
                rec.cone.error("cone", e.kind() + ": " + e.what());
            }
        }
        return rec;
    }
}

json checks_json(const CheckList& list) {
    json arr = json::array();
    for (const auto& c : list.checks()) {
        json j;
        j["name"] = c.name;
        j["status"] = status_name(c.status);
        if (!c.witness.empty()) j["witness"] = c.witness;
        j["expected"] = c.expect_zero ? "zero" : "informative";
        arr.push_back(std::move(j));
    }
    return arr;
}

json coords_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(to_string(x));
    return arr;
}

json classification_json(const std::vector<PointRecord>& recs, int n) {
    json j;
    bool any = false;
    bool dz = true, tz = true, ri = true, s_zero = true;
    std::array<bool, 3> each{true, true, true};
    std::optional<std::string> s;
    bool s_same = true;
    for (const auto& r : recs) {
        if (!r.classification) continue;
        const auto& c = *r.classification;
        any = true;
        dz = dz && c.dOmega_zero;
        tz = tz && c.torsion_zero;
        ri = ri && c.reeb_invariant;
        for (int l = 0; l < 3; ++l) each[l] = each[l] && c.reeb_invariant_each[l];
        s_zero = s_zero && c.s == "0";
        if (!s)
            s = c.s;
        else if (*s != c.s)
            s_same = false;
    }
    if (!any) return nullptr;
    j["dOmega_zero"] = dz;
    j["torsion_zero"] = tz;
    j["reeb_invariant"] = ri;
    j["reeb_invariant_each"] = json::array({each[0], each[1], each[2]});
    j["s"] = s_same ? *s : std::string("non-constant");
    if (!(dz && tz && ri))
        j["verdict"] = kVerdictGeneric;
    else
        j["verdict"] = s_zero ? kVerdictFlat : kVerdictSasakian;
    if (n == 1) j["caveat"] = kDimensionSevenCaveat;
    return j;
}

} // namespace

void parse_suites(const std::string& list, RunConfig& config) {
    SuiteSelection sel{false, false, false};
    bool cone = false;
    std::stringstream ss(list);
    std::string item;
    bool any = false;
    while (std::getline(ss, item, ',')) {
        if (item == "structure")
            sel.structure = true;
        else if (item == "torsion")
            sel.torsion = true;
        else if (item == "theorem")
            sel.theorem = true;
        else if (item == "cone")
            cone = true;
        else
            throw ConfigError("unknown suite '" + item + "' (expected structure, torsion, theorem, cone)");
        any = true;
    }
    if (!any) throw ConfigError("empty suite list");
    config.suites = sel;
    config.cone = cone;
}

void validate_config(const RunConfig& c) {
    if (c.example.empty() == c.chart_path.empty()) throw ConfigError("exactly one of --example and --chart is required");
    if (!c.example.empty() && !c.n) throw ConfigError("--n is required with --example");
    if (c.n && *c.n < 1) throw ConfigError("--n must be at least 1");
    if (c.points < 1) throw ConfigError("--points must be at least 1");
    if (c.coeff_bound < 1) throw ConfigError("--coeff-bound must be at least 1");
    if (c.retries < 0) throw ConfigError("retry count must be non-negative");
    if (c.jet_order < 2) throw ConfigError("--jet-order must be at least 2");
    const bool deep = c.suites.structure || c.suites.torsion || c.suites.theorem;
    if (deep && c.jet_order < 3) throw ConfigError("the structure, torsion and theorem suites need --jet-order >= 3");
    if (!deep && !c.cone) throw ConfigError("no suite selected");
    if (c.prescreen && !deep) throw ConfigError("--prescreen needs one of the structure, torsion or theorem suites");
}

QcChart resolve_chart(const RunConfig& c) {
    QcChart chart = c.example.empty() ? load_chart(c.chart_path) : make_example(c.example, *c.n);
    if (c.example.empty() && c.n && chart.n != *c.n) {
        throw ConfigError("--n " + std::to_string(*c.n) + " disagrees with the chart (n = " + std::to_string(chart.n) + ")");
    }
    if (c.deform) chart = conformal_deform(chart, *c.deform);
    return chart;
}

RunOutcome run_check(const RunConfig& cfg) {
    validate_config(cfg);
    const QcChart chart = resolve_chart(cfg);

    std::vector<PointRecord> recs(static_cast<std::size_t>(cfg.points));
    std::atomic<int> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (int i = next++; i < cfg.points; i = next++) {
            try {
                recs[static_cast<std::size_t>(i)] = run_point(chart, cfg, i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    int threads = cfg.threads > 0 ? cfg.threads : static_cast<int>(std::thread::hardware_concurrency());
    threads = std::clamp(threads, 1, cfg.points);
    std::vector<std::thread> pool;
    for (int i = 1; i < threads; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);

    RunOutcome out;
    json report;
    report["chart"] = chart.label;
    report["n"] = chart.n;
    report["seed"] = cfg.seed;
    report["jet_order"] = cfg.jet_order;
    report["coeff_bound"] = cfg.coeff_bound;
    json suites = json::array();
    if (cfg.suites.structure) suites.push_back("structure");
    if (cfg.suites.torsion) suites.push_back("torsion");
    if (cfg.suites.theorem) suites.push_back("theorem");
    if (cfg.cone) suites.push_back("cone");
    report["suites"] = std::move(suites);

    json points = json::array();
    json cone_points = json::array();
    for (std::size_t i = 0; i < recs.size(); ++i) {
        const auto& r = recs[i];
        json p;
        p["index"] = i;
        p["coords"] = coords_json(r.coords);
        if (r.s) p["scalars"] = json{{"s", *r.s}, {"Scal", *r.scal}};
        p["checks"] = checks_json(r.checks);
        p["retries"] = r.retries;
        points.push_back(std::move(p));
        for (const auto& c : r.checks.checks())
            if (failing(c)) out.failures.push_back("point " + std::to_string(i) + ": " + c.name);
        if (cfg.cone) {
            json cp;
            cp["index"] = i;
            cp["t"] = r.tvalue ? json(to_string(*r.tvalue)) : json(nullptr);
            cp["sasakian_epsilon"] = r.sasakian_epsilon ? json(*r.sasakian_epsilon) : json(nullptr);
            cp["checks"] = checks_json(r.cone);
            cone_points.push_back(std::move(cp));
            for (const auto& c : r.cone.checks())
                if (failing(c)) out.failures.push_back("point " + std::to_string(i) + ": " + c.name);
        }
    }
    report["points"] = std::move(points);
    report["classification"] = classification_json(recs, chart.n);
    if (cfg.cone) report["cone"] = json{{"points", std::move(cone_points)}};

    out.report = report.dump(2) + "\n";
    out.exit_code = out.failures.empty() ? 0 : 1;
    return out;
}

} // namespace qc
