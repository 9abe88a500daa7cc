// Acceptance suite: one PASS/FAIL line per criterion, exact tolerance.

#include "cli.hpp"
#include "fixtures.hpp"
#include "properties.hpp"

#include "qc/atlas.hpp"
#include "qc/biquard.hpp"
#include "qc/cone.hpp"
#include "qc/errors.hpp"
#include "qc/runner.hpp"
#include "qc/sampling.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

using namespace qc;

namespace {

constexpr std::uint64_t kSeed = 20250101;
constexpr int kPoints = 5;

struct Sample {
    QcPointFrame<Rational> frame;
    PointAnalysis<Rational> analysis;
};

struct ChartRun {
    std::string name;
    QcChart chart;
    std::vector<Sample> samples;
    std::string error;
};

const Check* find(const PointAnalysis<Rational>& pa, const std::string& name) {
    for (const auto& c : pa.checks.checks())
        if (c.name == name) return &c;
    return nullptr;
}

bool zero(const PointAnalysis<Rational>& pa, const std::string& name, std::string& why) {
    const auto* c = find(pa, name);
    if (!c) {
        why = name + " missing";
        return false;
    }
    if (c->status != Status::Zero) {
        why = name + " " + status_name(c->status) + " (" + c->witness + ")";
        return false;
    }
    return true;
}

ChartRun sample_chart(const std::string& name, const QcChart& chart, int points) {
    ChartRun run{name, chart, {}, {}};
    PointSampler sampler(kSeed, 7);
    int attempts = 0;
    while (static_cast<int>(run.samples.size()) < points) {
        if (++attempts > points + 10) {
            run.error = "too many degenerate sample points";
            break;
        }
        const auto pt = sampler.next_point(chart.dimension());
        try {
            auto fr = build_frame<Rational>(chart, pt, 3);
            auto pa = identity_suite(fr, {});
            run.samples.push_back({std::move(fr), std::move(pa)});
        } catch (const SingularSystem&) {
        } catch (const ValuePartZero&) {
        } catch (const DivisionByZero&) {
        } catch (const DegenerateStructure&) {
        } catch (const Error& e) {
            run.error = e.kind() + ": " + e.what();
            break;
        }
    }
    return run;
}

class Report {
public:
    void line(int id, const std::string& title, bool ok, const std::string& detail) {
        std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ". " << title;
        if (!detail.empty()) std::cout << " -- " << detail;
        std::cout << std::endl;
        if (!ok) ++failed_;
    }
    int failed() const { return failed_; }

private:
    int failed_ = 0;
};

std::string count_label(std::size_t points, std::size_t charts) {
    return std::to_string(points) + " points on " + std::to_string(charts) + " charts";
}

} // namespace

int main() {
    Report report;
    const auto started = std::chrono::steady_clock::now();

    std::vector<ChartRun> runs;
    runs.push_back(sample_chart("heisenberg(1)", heisenberg(1), kPoints));
    runs.push_back(sample_chart("heisenberg(2)", heisenberg(2), kPoints));
    runs.push_back(sample_chart("sphere3sasakian(1)", sphere_3sasakian(1), kPoints));
    runs.push_back(sample_chart("sphere3sasakian(2)", sphere_3sasakian(2), kPoints));
    runs.push_back(sample_chart("heisenberg(2)+mu", qctest::deformed_heisenberg(2), kPoints));
    runs.push_back(sample_chart("heisenberg(1)+mu", qctest::deformed_heisenberg(1), kPoints));
    std::map<std::string, const ChartRun*> by_name;
    for (const auto& r : runs) by_name[r.name] = &r;

    // 1. Structure equations.
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0;
        for (const char* name : {"heisenberg(1)", "heisenberg(2)", "sphere3sasakian(1)", "sphere3sasakian(2)",
                                 "heisenberg(2)+mu"}) {
            const auto& run = *by_name[name];
            if (!run.error.empty() || static_cast<int>(run.samples.size()) < kPoints) {
                ok = false;
                why = std::string(name) + ": " + run.error;
                continue;
            }
            for (const auto& s : run.samples) {
                ++points;
                for (const char* check : {"structure.streq.1", "structure.streq.2", "structure.streq.3",
                                          "structure.str2.1", "structure.str2.2", "structure.str2.3", "structure.strom"})
                    if (!zero(s.analysis, check, why)) {
                        ok = false;
                        why = std::string(name) + ": " + why;
                    }
            }
        }
        report.line(1, "structure equations exact", ok, ok ? count_label(points, 5) : why);
    }

    // 2. Scalar values on the sphere and Heisenberg charts.
    {
        bool ok = true;
        std::string why;
        for (int n : {1, 2}) {
            const auto& run = *by_name["sphere3sasakian(" + std::to_string(n) + ")"];
            for (const auto& s : run.samples) {
                const auto& fr = s.frame;
                auto conn = connection_forms(fr);
                solve_scalar(fr, conn);
                ricci_forms(conn);
                if (conn.s.value() != 2 || conn.scal.value() != 16 * n * (n + 2)) {
                    ok = false;
                    why = "sphere n=" + std::to_string(n) + " s=" + to_string(conn.s.value()) +
                          " Scal=" + to_string(conn.scal.value());
                }
                for (int l = 0; l < 3; ++l) {
                    const auto& a = conn.alpha[l];
                    if (!(a + Rational(2) * fr.eta[l].truncated(a.order())).is_zero()) {
                        ok = false;
                        why = "alpha_" + std::to_string(l + 1) + " != -2 eta on sphere n=" + std::to_string(n);
                    }
                    const auto rho = frame_matrix(conn.rho[l], fr.hframe);
                    const auto om = frame_matrix(fr.omega[l], fr.hframe);
                    const int o = std::min(rho.order(), om.order());
                    if (!(rho.truncated(o) + om.truncated(o).scaled(Rational(2))).is_zero()) {
                        ok = false;
                        why = "rho_" + std::to_string(l + 1) + "|H != -2 omega on sphere n=" + std::to_string(n);
                    }
                }
            }
        }
        for (const char* name : {"heisenberg(1)", "heisenberg(2)"})
            for (const auto& s : by_name[name]->samples)
                if (!s.analysis.s.is_zero() || !s.analysis.scal.is_zero()) {
                    ok = false;
                    why = std::string(name) + " has nonzero s or Scal";
                }
        report.line(2, "s = 2, Scal = 16n(n+2), alpha = -2 eta, rho|H = -2 omega; Heisenberg s = Scal = 0", ok, why);
    }

    // 3. Flag equivalence at n = 2.
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0;
        bool saw_torsion = false, saw_free = false;
        for (const char* name : {"heisenberg(2)", "sphere3sasakian(2)", "heisenberg(2)+mu"}) {
            for (const auto& s : by_name[name]->samples) {
                ++points;
                const auto& c = s.analysis.classification;
                if (!c) {
                    ok = false;
                    why = std::string(name) + ": no classification";
                    continue;
                }
                if (!(c->dOmega_zero == c->torsion_zero && c->torsion_zero == c->reeb_invariant)) {
                    ok = false;
                    why = std::string(name) + ": flags disagree";
                }
                if (c->torsion_zero) {
                    saw_free = true;
                    for (const char* check : {"theorem.ds", "theorem.vertical_integrable.12",
                                              "theorem.vertical_integrable.23", "theorem.vertical_integrable.31"})
                        if (!zero(s.analysis, check, why)) {
                            ok = false;
                            why = std::string(name) + ": " + why;
                        }
                } else {
                    saw_torsion = true;
                }
            }
        }
        ok = ok && saw_torsion && saw_free;
        report.line(3, "dOmega = 0 <=> torsion = 0 <=> Reeb-invariant; ds = 0 and [xi_i, xi_j] vertical when torsion-free",
                    ok, ok ? std::to_string(points) + " points at n = 2" : why);
    }

    // 4. Oracle equivalence of the torsion routes.
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0, charts = 0;
        bool nonzero = false;
        for (const char* name : {"heisenberg(2)", "sphere3sasakian(2)", "heisenberg(2)+mu"}) {
            const auto& run = *by_name[name];
            if (run.samples.size() < 3) continue;
            ++charts;
            for (const auto& s : run.samples) {
                ++points;
                for (const char* check :
                     {"torsion.routes_agree.T0", "torsion.routes_agree.U", "torsion.ricci.T0_trace_free",
                      "torsion.ricci.U_trace_free", "torsion.ricci.T0_invariance", "torsion.ricci.U_invariance",
                      "torsion.four_form.T0_trace_free", "torsion.four_form.U_trace_free",
                      "torsion.four_form.T0_invariance", "torsion.four_form.U_invariance"})
                    if (!zero(s.analysis, check, why)) {
                        ok = false;
                        why = std::string(name) + ": " + why;
                    }
                const auto* t = find(s.analysis, "torsion.T0");
                if (t && t->status == Status::Nonzero) nonzero = true;
            }
        }
        ok = ok && charts >= 2 && nonzero;
        if (!nonzero && why.empty()) why = "no chart with nonzero torsion";
        report.line(4, "four-form route == curvature route, both trace-free and Sp(n)Sp(1)-typed", ok,
                    ok ? count_label(points, charts) + ", nonzero torsion included" : why);
    }

    // 5. Dimension seven.
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0;
        for (const char* name : {"heisenberg(1)", "sphere3sasakian(1)", "heisenberg(1)+mu"}) {
            for (const auto& s : by_name[name]->samples) {
                ++points;
                auto conn = connection_forms(s.frame);
                solve_scalar(s.frame, conn);
                ricci_forms(conn);
                if (!torsion_from_ricci(s.frame, conn).U.is_zero()) {
                    ok = false;
                    why = std::string(name) + ": U != 0";
                }
                bool refused = false;
                try {
                    torsion_from_four_form(s.frame, exterior_derivative(s.frame.Omega));
                } catch (const DimensionSevenUnsupported&) {
                    refused = true;
                }
                if (!refused) {
                    ok = false;
                    why = std::string(name) + ": four-form route did not refuse";
                }
            }
        }
        report.line(5, "n = 1: U = 0 exactly and the four-form route refuses", ok,
                    ok ? std::to_string(points) + " points" : why);
    }

    // 6. Cone criteria.
    {
        bool ok = true;
        std::string why;
        std::size_t points = 0;
        std::string heis_witness;
        for (const auto& run : runs) {
            for (std::size_t i = 0; i < run.samples.size(); ++i) {
                if (run.chart.n == 2 && i >= 2) break;
                const auto& fr = run.samples[i].frame;
                ++points;
                const auto sas = sasakian_check(fr);
                const int eps = sas.epsilon.value_or(1);
                const auto hk = hyperkahler_check(cone_structures(fr, Rational(3, 2), eps));
                bool closed = true;
                for (int l = 0; l < 3; ++l) closed = closed && hk.dFi[l].is_zero();
                const bool sasakian = sas.epsilon.has_value();
                if (closed != sasakian) {
                    ok = false;
                    why = run.name + ": closedness and (33sas) disagree";
                }
                if (run.name.rfind("sphere", 0) == 0 && !(closed && hk.dF.is_zero() && sasakian && eps == 1)) {
                    ok = false;
                    why = run.name + ": dF_i or dF nonzero";
                }
                if (run.name.rfind("heisenberg(", 0) == 0 && run.name.find('+') == std::string::npos) {
                    if (closed) {
                        ok = false;
                        why = run.name + ": dF_i vanished";
                    } else if (heis_witness.empty()) {
                        heis_witness = witness(hk.dFi[0]);
                    }
                }
                if (!hk.leibniz.is_zero()) {
                    ok = false;
                    why = run.name + ": dF != 2 sum dF_i ^ F_i";
                }
            }
        }
        ok = ok && !heis_witness.empty();
        report.line(6, "cone: sphere dF_i = dF = 0; Heisenberg dF_i != 0; closed <=> 3-Sasakian", ok,
                    ok ? std::to_string(points) + " points, Heisenberg witness dF_1 " + heis_witness : why);
    }

    // 7. Kernel properties and frame independence.
    {
        std::string why;
        bool ok = true;
        int total = 0;
        auto take = [&](const char* what, const qctest::PropertyResult& r, int min_cases) {
            total += r.cases;
            if (!r.ok() || r.cases < min_cases) {
                ok = false;
                why = std::string(what) + ": " + (r.ok() ? "too few cases" : r.first);
            }
        };
        take("d o d", qctest::d_squared_zero(kSeed + 1, 120), 100);
        take("graded commutativity", qctest::graded_commutativity(kSeed + 2, 120), 100);
        take("Cartan identity", qctest::cartan_identity(kSeed + 3, 120), 100);
        take("jet ring laws", qctest::jet_ring_laws(kSeed + 4, 120), 100);
        take("solve_linear_jets", qctest::solve_consistency(kSeed + 5, 120), 100);
        int remix = 0;
        for (const char* name : {"heisenberg(1)+mu", "sphere3sasakian(1)", "heisenberg(2)+mu"}) {
            const auto& run = *by_name[name];
            if (run.samples.empty()) continue;
            const int cases = run.chart.n == 1 ? 5 : 2;
            const auto r = qctest::remix_invariance(run.samples.front().frame, kSeed + 6, cases);
            take("frame remixing", r, cases);
            remix += r.cases;
        }
        ok = ok && remix >= 10;
        report.line(7, "kernel properties and frame independence", ok,
                    ok ? std::to_string(total - remix) + " randomized cases, " + std::to_string(remix) + " remixes"
                       : why);
    }

    // 8. Determinism and the exit-code contract.
    {
        bool ok = true;
        std::string why;
        RunConfig cfg;
        cfg.example = "heisenberg";
        cfg.n = 1;
        cfg.deform = "1+x1^2";
        cfg.points = 3;
        cfg.seed = kSeed;
        cfg.cone = true;
        const auto a = run_check(cfg);
        cfg.threads = 2;
        const auto b = run_check(cfg);
        if (a.report != b.report) {
            ok = false;
            why = "reports differ between identical runs";
        }
        qctest::Workdir w("acceptance");
        const auto r1 = w.path("a.json"), r2 = w.path("b.json"), chart = w.path("broken.json");
        const std::string args = "check --example sphere3sasakian --n 1 --points 2 --seed 42 --json ";
        const int e0 = qctest::run_cli(args + r1);
        const int e0b = qctest::run_cli(args + r2);
        if (e0 != 0 || e0b != 0 || qctest::read_file(r1) != qctest::read_file(r2)) {
            ok = false;
            why = "CLI runs not identical or nonzero exit";
        }
        auto broken = heisenberg(1);
        broken.eta[2] = broken.eta[1];
        qctest::write_file(chart, chart_to_json(broken));
        const int e1 = qctest::run_cli("check --chart " + chart + " --points 1 --retries 0 --json " + w.path("c.json"));
        const int e2 = qctest::run_cli("check --chart " + w.path("missing.json"));
        if (e1 != 1 || e2 != 2) {
            ok = false;
            why = "exit codes " + std::to_string(e1) + ", " + std::to_string(e2) + " (want 1, 2)";
        }
        report.line(8, "byte-identical reports and exit codes 0/1/2", ok, why);
    }

    const auto secs =
        std::chrono::duration_cast<std::chrono::seconds>(std::chrono::steady_clock::now() - started).count();
    std::cout << (report.failed() == 0 ? "all criteria pass" : std::to_string(report.failed()) + " criteria fail")
              << " (" << secs << " s)" << std::endl;
    return report.failed() == 0 ? 0 : 1;
}
