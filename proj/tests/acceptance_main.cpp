// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.  Exit code 0 iff everything passes.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "dunkl/cli_app.hpp"
#include "dunkl/heun.hpp"
#include "dunkl/models.hpp"
#include "dunkl/verify.hpp"

using namespace dunkl;

namespace {

int g_workers = [] {
    if (const char* env = std::getenv("DUNKL_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}();

void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn) {
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto drain = [&] {
        for (std::size_t i; (i = next.fetch_add(1)) < n;) fn(i);
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < std::min<int>(workers, static_cast<int>(n)) - 1; ++t)
        pool.emplace_back(drain);
    drain();
    for (auto& t : pool) t.join();
}

struct Criterion {
    int id;
    std::string name;
    bool passed = true;
    double seconds = 0.0;
    std::string detail;
};

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

/// mu in {1/4, 1/2, 3/2}, k+, k- in {0, 1} plus k = -1 where the
/// admissibility conditions permit.
std::vector<AxisParams> axis_grid() {
    std::vector<AxisParams> grid;
    for (long num : {1, 2, 6}) {
        Rational mu(num, 4);
        for (long kp : {0L, 1L, -1L})
            for (long km : {0L, 1L, -1L}) {
                AxisParams a{mu, kp, km};
                if (a.admissible()) grid.push_back(a);
            }
    }
    return grid;
}

const std::vector<ModelParams>& singular_tuples() {
    static const std::vector<ModelParams> t = {
        {{Rational(1, 2), 0, 0}, {Rational(1, 2), 0, 0}},
        {{Rational(1, 2), 1, 0}, {Rational(1, 4), 0, 1}},
        {{Rational(1, 4), 0, 0}, {Rational(3, 2), 1, 0}},
        {{Rational(3, 2), 0, -1}, {Rational(1, 2), 0, 0}},
    };
    return t;
}

const std::vector<ModelParams>& aniso_tuples() {
    static const std::vector<ModelParams> t = {
        {{Rational(0), 0, 0}, {Rational(1, 2), 0, 0}},
        {{Rational(1, 4), 0, 0}, {Rational(1, 2), 0, 1}},
        {{Rational(1, 2), 0, 0}, {Rational(3, 2), 1, 0}},
    };
    return t;
}

// --- criterion 1: exact algebra suites over the parameter grid ---------------

Criterion criterion_algebra() {
    Criterion cr{1, "exact algebra suites on the parameter grid"};
    Timer timer;
    const std::vector<AxisParams> axes = axis_grid();

    std::vector<std::pair<std::string, ModelParams>> items;
    for (const auto& a : axes) items.emplace_back("singular_combined", ModelParams{a, a});
    for (const auto& ax : axes)
        for (const auto& ay : axes) {
            if (ax.mu == ay.mu && ax.k_plus == ay.k_plus && ax.k_minus == ay.k_minus)
                continue;  // covered by the combined run above
            items.emplace_back("singular_xy", ModelParams{ax, ay});
        }
    for (long num : {1, 2, 6}) {
        Rational mu(num, 4);
        AxisParams x{mu, 0, 0};
        items.emplace_back("slm12", ModelParams{x, AxisParams{Rational(1, 2), 0, 0}});
        items.emplace_back("T_algebra", ModelParams{AxisParams{Rational(0), 0, 0}, x});
        for (const auto& ay : axes) items.emplace_back("F_algebra", ModelParams{x, ay});
    }

    std::atomic<long> failures{0};
    std::vector<std::string> failure_notes(items.size());
    parallel_for(items.size(), g_workers, [&](std::size_t i) {
        const auto& [suite, params] = items[i];
        VerifyReport rep = run_identity_suite(suite, params, 1);
        if (!rep.passed()) {
            failures.fetch_add(1);
            for (const auto& c : rep.checks)
                if (!c.passed)
                    failure_notes[i] = suite + " [" + params.describe() + "] " + c.name;
        }
    });
    cr.seconds = timer.seconds();
    long nfail = failures.load();
    cr.passed = nfail == 0 && cr.seconds <= 60.0;
    std::ostringstream os;
    os << items.size() << " suite runs, " << nfail << " failures";
    if (nfail)
        for (const auto& note : failure_notes)
            if (!note.empty()) {
                os << "; first: " << note;
                break;
            }
    if (cr.seconds > 60.0) os << "; exceeded 60 s target";
    cr.detail = os.str();
    return cr;
}

// --- criterion 2: exact eigen-residuals ---------------------------------------

Criterion criterion_eigen_residuals() {
    Criterion cr{2, "exact eigen-residuals (Cartesian, polar, anisotropic)"};
    Timer timer;
    std::atomic<long> checks{0}, failures{0};

    std::vector<std::function<void()>> work;
    for (const auto& p : singular_tuples()) {
        work.push_back([&checks, &failures, p] {
            LinearOperator H = hamiltonian_singular_2d(p);
            auto ks = symmetry_K(p);
            for (int sx : {1, -1})
                for (int sy : {1, -1}) {
                    Sector sec{sx, sy};
                    for (long nx = 0; nx <= 5; ++nx)
                        for (long ny = 0; nx + ny <= 5; ++ny) {
                            Series psi = cartesian_eigenfunction(p, nx, ny, sec);
                            Rational E = energy_singular_2d(p, nx, ny, sec);
                            checks.fetch_add(2);
                            if (!(H.apply(psi) - E * psi).is_zero()) failures.fetch_add(1);
                            Rational l1 = k1_eigenvalue(p, nx, ny, sec);
                            if (!(ks.K1.apply(psi) - l1 * psi).is_zero()) failures.fetch_add(1);
                        }
                    long th = theta(sec.sx) + theta(sec.sy);
                    for (long j = 0; 2 * j + th <= 8; ++j)
                        for (long ell = 0; 2 * (j + ell) + th <= 8; ++ell) {
                            long twice_n = 2 * j + th;
                            Series psi = polar_eigenfunction(p, twice_n, ell, sec);
                            Rational E = energy_polar(p, twice_n, ell, sec);
                            Rational lam = k2_eigenvalue(p, twice_n, sec);
                            checks.fetch_add(2);
                            if (!(H.apply(psi) - E * psi).is_zero()) failures.fetch_add(1);
                            if (!(ks.K2.apply(psi) - lam * psi).is_zero()) failures.fetch_add(1);
                        }
                }
        });
    }
    for (const auto& p : aniso_tuples()) {
        work.push_back([&checks, &failures, p] {
            LinearOperator H = hamiltonian_anisotropic(p);
            for (int sy : {1, -1})
                for (long nx = 0; nx <= 4; ++nx)
                    for (long ny = 0; nx + ny <= 4; ++ny) {
                        Series psi = anisotropic_eigenfunction(p, nx, ny, sy);
                        Rational E = energy_anisotropic(p, nx, ny, sy);
                        checks.fetch_add(1);
                        if (!(H.apply(psi) - E * psi).is_zero()) failures.fetch_add(1);
                    }
        });
    }
    parallel_for(work.size(), g_workers, [&](std::size_t i) { work[i](); });
    cr.seconds = timer.seconds();
    cr.passed = failures.load() == 0;
    cr.detail = std::to_string(checks.load()) + " residuals, " +
                std::to_string(failures.load()) + " nonzero";
    return cr;
}

// --- criterion 3: exact orthogonality and squared-norm identities -------------

Criterion criterion_orthogonality() {
    Criterion cr{3, "exact orthogonality and normalization identities"};
    Timer timer;
    std::atomic<long> checks{0}, failures{0};

    auto family_check = [&checks, &failures](const std::vector<Series>& states,
                                             const std::vector<GammaProduct>& claimed) {
        for (std::size_t i = 0; i < states.size(); ++i) {
            checks.fetch_add(1);
            if (!(inner_product(states[i], states[i]) == claimed[i])) failures.fetch_add(1);
            for (std::size_t j = i + 1; j < states.size(); ++j) {
                checks.fetch_add(1);
                if (!inner_product(states[i], states[j]).is_zero()) failures.fetch_add(1);
            }
        }
    };

    std::vector<std::function<void()>> work;
    for (const auto& p : singular_tuples()) {
        work.push_back([&family_check, p] {
            std::vector<Series> states;
            std::vector<GammaProduct> claimed;
            for (int sx : {1, -1})
                for (int sy : {1, -1})
                    for (long nx = 0; nx <= 5; ++nx)
                        for (long ny = 0; nx + ny <= 5; ++ny) {
                            Sector sec{sx, sy};
                            states.push_back(cartesian_eigenfunction(p, nx, ny, sec));
                            claimed.push_back(claimed_norm2_cartesian(p, nx, ny, sec));
                        }
            family_check(states, claimed);
        });
        work.push_back([&family_check, p] {
            std::vector<Series> states;
            std::vector<GammaProduct> claimed;
            for (int sx : {1, -1})
                for (int sy : {1, -1}) {
                    long th = theta(sx) + theta(sy);
                    for (long j = 0; 2 * j + th <= 8; ++j)
                        for (long ell = 0; 2 * (j + ell) + th <= 8; ++ell) {
                            Sector sec{sx, sy};
                            states.push_back(polar_eigenfunction(p, 2 * j + th, ell, sec));
                            claimed.push_back(claimed_norm2_polar(p, 2 * j + th, ell, sec));
                        }
                }
            family_check(states, claimed);
        });
    }
    for (const auto& p : aniso_tuples()) {
        work.push_back([&family_check, p] {
            std::vector<Series> states;
            std::vector<GammaProduct> claimed;
            for (int sy : {1, -1})
                for (long nx = 0; nx <= 4; ++nx)
                    for (long ny = 0; nx + ny <= 4; ++ny) {
                        states.push_back(anisotropic_eigenfunction(p, nx, ny, sy));
                        claimed.push_back(claimed_norm2_anisotropic(p, nx, ny, sy));
                    }
            family_check(states, claimed);
        });
    }
    parallel_for(work.size(), g_workers, [&](std::size_t i) { work[i](); });
    cr.seconds = timer.seconds();
    cr.passed = failures.load() == 0;
    cr.detail = std::to_string(checks.load()) + " exact inner products, " +
                std::to_string(failures.load()) + " failures";
    return cr;
}

// --- criterion 4: Dunkl anti-Hermiticity --------------------------------------

Criterion criterion_antihermiticity() {
    Criterion cr{4, "Dunkl derivative anti-Hermiticity (50-pair sample)"};
    Timer timer;
    VerifyReport rep = antihermiticity_check(Rational(1, 2), Rational(1, 4), 50);
    VerifyReport rep2 = antihermiticity_check(Rational(3, 2), Rational(1, 2), 50);
    cr.seconds = timer.seconds();
    cr.passed = rep.passed() && rep2.passed();
    cr.detail = std::to_string(rep.properties.size() + rep2.properties.size()) +
                " probe pairs, exact zeros required";
    return cr;
}

// --- criterion 5: interbasis structure ----------------------------------------

Criterion criterion_interbasis() {
    Criterion cr{5, "K2 level matrices: tridiagonal, eigenvalues, overlaps"};
    Timer timer;
    std::atomic<long> levels{0}, failures{0};
    std::string first_failure;
    std::mutex note_mutex;

    std::vector<std::function<void()>> work;
    for (const auto& p : singular_tuples()) {
        for (int sx : {1, -1})
            for (int sy : {1, -1}) {
                work.push_back([&, p, sx, sy] {
                    Sector sec{sx, sy};
                    for (long N = 0; N <= 4; ++N) {
                        Rational energy = energy_singular_2d(p, 0, 0, sec) + 2 * Rational(N);
                        bool ok = true;
                        std::string why;
                        try {
                            DegenerateSpace space =
                                build_degenerate_space("singular2d", p, energy, sec);
                            LevelDiagonalization diag = k2_on_level(p, space);
                            if (diag.eigenvalues.size() != static_cast<std::size_t>(N + 1)) {
                                ok = false;
                                why = "dimension";
                            }
                            for (std::size_t i = 0; ok && i < diag.eigenvalues.size(); ++i) {
                                double target = to_double(diag.target_eigenvalues[i]);
                                if (std::abs(diag.eigenvalues[i] - target) > 1e-10) {
                                    ok = false;
                                    why = "eigenvalue mismatch";
                                }
                            }
                            const std::size_t n = diag.vectors.size();
                            for (std::size_t a = 0; ok && a < n; ++a)
                                for (std::size_t b = 0; ok && b < n; ++b) {
                                    double acc = 0;
                                    for (std::size_t i = 0; i < n; ++i)
                                        for (std::size_t j = 0; j < n; ++j)
                                            acc += diag.vectors[i][a] *
                                                   to_double(space.gram[i][j]) *
                                                   diag.vectors[j][b];
                                    double want = a == b ? 1.0 : 0.0;
                                    if (std::abs(acc - want) > 1e-10) {
                                        ok = false;
                                        why = "overlap orthogonality";
                                    }
                                }
                        } catch (const Error& e) {
                            ok = false;
                            why = e.what();
                        }
                        levels.fetch_add(1);
                        if (!ok) {
                            failures.fetch_add(1);
                            std::lock_guard<std::mutex> lock(note_mutex);
                            if (first_failure.empty())
                                first_failure = p.describe() + " sector " + sec.str() +
                                                " N=" + std::to_string(N) + ": " + why;
                        }
                    }
                });
            }
    }
    parallel_for(work.size(), g_workers, [&](std::size_t i) { work[i](); });
    cr.seconds = timer.seconds();
    cr.passed = failures.load() == 0;
    std::ostringstream os;
    os << levels.load() << " levels, " << failures.load() << " failures";
    if (!first_failure.empty()) os << "; first: " << first_failure;
    cr.detail = os.str();
    return cr;
}

// --- criterion 6: biconfluent Heun sector -------------------------------------

Criterion criterion_heun() {
    Criterion cr{6, "parabolic shooting: root counts, residuals, stability"};
    Timer timer;
    std::atomic<long> problems{0}, failures{0};
    std::string first_failure;
    std::mutex note_mutex;
    std::mutex pairing_mutex;
    std::vector<std::string> pairing_lines;
    std::vector<std::function<void()>> work;

    for (long muy_num : {0L, 1L}) {
        for (int sy : {1, -1}) {
            work.push_back([&, muy_num, sy] {
                ModelParams p{{Rational(0), 0, 0}, {Rational(muy_num, 2), 0, 0}};
                ShootConfig cfg;
                ResidualGrid grid;
                std::vector<LambdaF1Report::Level> levels;
                bool ok = true;
                std::string why;
                for (long N = 0; N < 3 && ok; ++N) {
                    ShootingProblem pr = make_shooting_problem(p, sy, N);
                    std::vector<double> roots;
                    try {
                        roots = shoot_lambda(pr, cfg);
                    } catch (const Error& e) {
                        ok = false;
                        why = e.what();
                        break;
                    }
                    if (static_cast<long>(roots.size()) != N + 1) {
                        ok = false;
                        why = "root count";
                        break;
                    }
                    for (double r : roots) {
                        double res = parabolic_residual(pr, r, -r, cfg, grid);
                        if (res > 1e-5) {
                            ok = false;
                            why = "residual " + std::to_string(res);
                            break;
                        }
                    }
                    if (!ok) break;
                    ShootConfig half = cfg;
                    half.h = cfg.h / 2;
                    std::vector<double> roots2 = shoot_lambda(pr, half);
                    if (roots2.size() != roots.size()) {
                        ok = false;
                        why = "halved-step root count";
                        break;
                    }
                    for (std::size_t i = 0; i < roots.size(); ++i)
                        if (std::abs(roots[i] - roots2[i]) >= 1e-9) {
                            ok = false;
                            why = "halved-step drift " +
                                  std::to_string(std::abs(roots[i] - roots2[i]));
                        }
                    DegenerateSpace space =
                        build_degenerate_space("caseI", p, pr.energy_exact, Sector{1, sy});
                    F1LevelData f1 = f1_on_level(p, space);
                    levels.push_back({pr.energy, roots, f1.eigenvalues});
                }
                problems.fetch_add(1);
                if (ok) {
                    LambdaF1Report rep = lambda_vs_f1(levels);
                    std::ostringstream os;
                    os << "  mu_y=" << muy_num << "/2 sector " << (sy > 0 ? "+" : "-")
                       << ": lambda ~ " << rep.a << " * f1 + " << rep.b << " (fit residual "
                       << rep.fit_residual << ", held-out " << rep.heldout_error << ")";
                    std::lock_guard<std::mutex> lock(pairing_mutex);
                    pairing_lines.push_back(os.str());
                } else {
                    failures.fetch_add(1);
                    std::lock_guard<std::mutex> lock(note_mutex);
                    if (first_failure.empty())
                        first_failure = "mu_y=" + std::to_string(muy_num) + "/2 sector " +
                                        (sy > 0 ? "+" : "-") + ": " + why;
                }
            });
        }
    }
    parallel_for(work.size(), g_workers, [&](std::size_t i) { work[i](); });
    cr.seconds = timer.seconds();
    cr.passed = failures.load() == 0 && cr.seconds <= 120.0;
    std::ostringstream os;
    os << problems.load() << " shooting configurations, " << failures.load() << " failures";
    if (!first_failure.empty()) os << "; first: " << first_failure;
    if (cr.seconds > 120.0) os << "; exceeded 120 s target";
    cr.detail = os.str();
    std::sort(pairing_lines.begin(), pairing_lines.end());
    for (const auto& line : pairing_lines) cr.detail += "\n" + line;
    return cr;
}

// --- criterion 7: CLI determinism and exit codes -------------------------------

int run_capture(const std::vector<std::string>& args, std::string& out_text) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    out_text = out.str();
    return code;
}

Criterion criterion_cli() {
    Criterion cr{7, "CLI determinism and exit-code contract"};
    Timer timer;
    std::vector<std::vector<std::string>> deterministic_cases = {
        {"spectrum", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/4", "--k-x", "1,0",
         "--k-y", "0,1", "--emax", "10"},
        {"spectrum", "--model", "aniso", "--mu-x", "0", "--mu-y", "1/2", "--emax", "8"},
        {"wavefn", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/2", "--nx", "1",
         "--ny", "0", "--sector", "++"},
        {"wavefn", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/2", "--basis",
         "polar", "--twice-n", "2", "--ell", "1", "--sector", "++"},
        {"overlap", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/2", "--sector",
         "++", "--level-index", "2"},
        {"verify", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/2", "--suite",
         "su11", "--workers", "2"},
        {"heun", "--mu-y", "1/2", "--sector", "+", "--levels", "1"},
        {"describe", "--model", "singular2d", "--mu-x", "1/2", "--mu-y", "1/2", "--op", "K2"},
    };
    bool ok = true;
    std::string why;
    for (const auto& args : deterministic_cases) {
        std::string a, b;
        int ca = run_capture(args, a);
        int cb = run_capture(args, b);
        if (ca != 0 || cb != 0 || a != b || a.empty()) {
            ok = false;
            why = "nondeterministic or failing: " + args[0];
            break;
        }
    }
    std::string ignored;
    if (ok) {
        int code = run_capture({"verify", "--model", "singular2d", "--mu-x", "-1/2", "--mu-y",
                                "1/2", "--suite", "su11"},
                               ignored);
        if (code != 2) {
            ok = false;
            why = "bad parameter should exit 2, got " + std::to_string(code);
        }
    }
    if (ok) {
        int code = run_capture({"verify", "--model", "singular2d", "--mu-x", "1/2", "--mu-y",
                                "1/2", "--suite", "su11", "--corrupt"},
                               ignored);
        if (code != 1) {
            ok = false;
            why = "corrupted operator should exit 1, got " + std::to_string(code);
        }
    }
    if (ok) {
        int code = run_capture({"overlap", "--model", "singular2d", "--mu-x", "1/2", "--mu-y",
                                "1/2", "--sector", "++", "--level-index", "-1"},
                               ignored);
        if (code != 3) {
            ok = false;
            why = "missing level should exit 3, got " + std::to_string(code);
        }
    }
    cr.seconds = timer.seconds();
    cr.passed = ok;
    cr.detail = ok ? "byte-identical reruns; exit codes 2/1/3 on canned failures" : why;
    return cr;
}

} // namespace

int main() {
    std::vector<Criterion> results;
    results.push_back(criterion_algebra());
    results.push_back(criterion_eigen_residuals());
    results.push_back(criterion_orthogonality());
    results.push_back(criterion_antihermiticity());
    results.push_back(criterion_interbasis());
    results.push_back(criterion_heun());
    results.push_back(criterion_cli());

    bool all = true;
    char buf[32];
    for (const auto& r : results) {
        std::snprintf(buf, sizeof buf, "%.1f", r.seconds);
        std::cout << "[criterion " << r.id << "] " << (r.passed ? "PASS" : "FAIL") << " (" << buf
                  << " s) " << r.name << " -- " << r.detail << "\n";
        all = all && r.passed;
    }
    std::cout << (all ? "ACCEPTANCE: PASS" : "ACCEPTANCE: FAIL") << "\n";
    return all ? 0 : 1;
}
