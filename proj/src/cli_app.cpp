#include "dunkl/cli_app.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"

#include "dunkl/errors.hpp"
#include "dunkl/heun.hpp"
#include "dunkl/models.hpp"
#include "dunkl/verify.hpp"

namespace dunkl {

namespace {

constexpr const char* kCsvHeader = "# dunkl-lab v1\n";

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return buf;
}

struct CommonOpts {
    std::string model = "singular2d";
    std::string mu_x = "0", mu_y = "0";
    std::string k_x = "0,0", k_y = "0,0";
    std::string out_path;
    int workers = 0;
};

std::pair<long, long> parse_k_pair(const std::string& text) {
    auto comma = text.find(',');
    if (comma == std::string::npos)
        throw ParseError("expected 'k+,k-' pair, got '" + text + "'");
    Rational kp = parse_rational(text.substr(0, comma));
    Rational km = parse_rational(text.substr(comma + 1));
    if (!is_integer(kp) || !is_integer(km))
        throw ParseError("k values must be integers, got '" + text + "'");
    return {to_long(kp), to_long(km)};
}

ModelParams parse_params(const CommonOpts& o) {
    auto [kxp, kxm] = parse_k_pair(o.k_x);
    auto [kyp, kym] = parse_k_pair(o.k_y);
    return ModelParams{{parse_rational(o.mu_x), kxp, kxm}, {parse_rational(o.mu_y), kyp, kym}};
}

int effective_workers(int flag) {
    if (flag > 0) return flag;
    if (const char* env = std::getenv("DUNKL_WORKERS")) {
        int v = std::atoi(env);
        if (v > 0) return v;
    }
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
}

void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot open output file '" + path + "'");
    f << text;
}

Sector parse_sector(const std::string& s) {
    if (s.size() != 2 || (s[0] != '+' && s[0] != '-') || (s[1] != '+' && s[1] != '-'))
        throw ParseError("sector must be one of ++, +-, -+, --");
    return Sector{s[0] == '+' ? 1 : -1, s[1] == '+' ? 1 : -1};
}

void validate_for_model(const ModelParams& p, const std::string& model) {
    if (model == "singular2d")
        p.validate_singular();
    else if (model == "aniso")
        p.validate_anisotropic();
    else if (model == "caseI")
        p.validate_case_one();
    else if (model == "caseII") {
        if (p.y.mu <= Rational(-1, 2))
            throw ConditionViolation("condition mu_y + 1/2 > 0 violated");
    } else
        throw ParseError("unknown model '" + model + "'");
}

int cmd_verify(const CommonOpts& o, const std::string& suite, bool corrupt,
               std::ostream& out) {
    ModelParams p = parse_params(o);
    validate_for_model(p, o.model);
    std::vector<std::string> names;
    if (suite == "all")
        names = suites_for_model(o.model);
    else
        names = {suite};
    int workers = effective_workers(o.workers);
    nlohmann::ordered_json ja = nlohmann::ordered_json::array();
    bool all_passed = true;
    bool first = true;
    for (const auto& name : names) {
        VerifyReport rep = run_identity_suite(name, p, workers, 1, corrupt && first);
        first = false;
        all_passed = all_passed && rep.passed();
        ja.push_back(rep.to_json());
    }
    emit(ja.dump(2) + "\n", o.out_path, out);
    return all_passed ? 0 : 1;
}

int cmd_spectrum(const CommonOpts& o, const std::string& emax_text, std::ostream& out) {
    ModelParams p = parse_params(o);
    Rational emax = parse_rational(emax_text);
    std::vector<EnergyLevel> levels;
    if (o.model == "singular2d")
        levels = spectrum_singular_2d(p, emax);
    else if (o.model == "aniso" || o.model == "caseI")
        levels = spectrum_anisotropic(p, emax);
    else
        throw ParseError("spectrum supports models singular2d and aniso");
    std::ostringstream os;
    os << kCsvHeader << "sector,n_x,n_y,energy_exact,energy_float\n";
    for (const auto& l : levels)
        os << l.sector.str() << "," << l.n1 << "," << l.n2 << "," << to_string(l.value) << ","
           << fmt(to_double(l.value)) << "\n";
    emit(os.str(), o.out_path, out);
    return 0;
}

int cmd_wavefn(const CommonOpts& o, const std::string& basis, long nx, long ny, long twice_n,
               long ell, const std::string& sector_text, const std::string& samples_path,
               std::ostream& out) {
    ModelParams p = parse_params(o);
    Sector sec = parse_sector(sector_text);
    Series state = Series::zero(AxisProfile{Rational(0), Rational(1)},
                                AxisProfile{Rational(0), Rational(1)});
    nlohmann::ordered_json j;
    if (o.model == "singular2d" && basis == "cartesian") {
        state = cartesian_eigenfunction(p, nx, ny, sec);
        j["energy"] = to_string(energy_singular_2d(p, nx, ny, sec));
    } else if (o.model == "singular2d" && basis == "polar") {
        state = polar_eigenfunction(p, twice_n, ell, sec);
        j["energy"] = to_string(energy_polar(p, twice_n, ell, sec));
        j["k2_eigenvalue"] = to_string(k2_eigenvalue(p, twice_n, sec));
    } else if ((o.model == "aniso" || o.model == "caseI") && basis == "cartesian") {
        state = anisotropic_eigenfunction(p, nx, ny, sec.sy);
        j["energy"] = to_string(energy_anisotropic(p, nx, ny, sec.sy));
    } else {
        throw ParseError("unsupported model/basis combination");
    }
    j["model"] = o.model;
    j["basis"] = basis;
    j["sector"] = sec.str();
    j["series"] = state.to_json();
    emit(j.dump(2) + "\n", o.out_path, out);
    if (!samples_path.empty()) {
        std::ostringstream os;
        os << kCsvHeader << "x,y,value\n";
        for (double x = -2.0; x <= 2.0 + 1e-9; x += 0.5) {
            for (double y = -2.0; y <= 2.0 + 1e-9; y += 0.5) {
                double vx = x == 0.0 ? 0.25 : x;  // avoid singular axis points
                double vy = y == 0.0 ? 0.25 : y;
                os << fmt(vx) << "," << fmt(vy) << "," << fmt(state.evaluate(vx, vy)) << "\n";
            }
        }
        std::ofstream f(samples_path, std::ios::binary);
        if (!f) throw Error("cannot open output file '" + samples_path + "'");
        f << os.str();
    }
    return 0;
}

int cmd_overlap(const CommonOpts& o, long level_index, const std::string& sector_text,
                std::ostream& out) {
    if (o.model != "singular2d")
        throw ParseError("overlap requires --model singular2d");
    ModelParams p = parse_params(o);
    Sector sec = parse_sector(sector_text);
    if (level_index < 0) throw EmptyLevelError("negative level index");
    Rational energy = energy_singular_2d(p, 0, 0, sec) + 2 * Rational(level_index);
    DegenerateSpace space = build_degenerate_space("singular2d", p, energy, sec);
    LevelDiagonalization diag = k2_on_level(p, space);
    std::ostringstream os;
    os << kCsvHeader << "kind,i,j,value\n";
    const std::size_t n = diag.matrix.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            os << "k2_matrix," << i << "," << j << "," << to_string(diag.matrix[i][j]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        os << "eigenvalue," << i << ",," << fmt(diag.eigenvalues[i]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            os << "eigenvector," << i << "," << j << "," << fmt(diag.vectors[i][j]) << "\n";
    for (std::size_t i = 0; i < n; ++i)
        os << "target_lambda," << i << ",," << to_string(diag.target_eigenvalues[i]) << "\n";
    emit(os.str(), o.out_path, out);
    return 0;
}

int cmd_heun(const CommonOpts& o, const std::string& sector_text, long levels,
             std::ostream& out) {
    ModelParams p = parse_params(o);
    p.x.mu = Rational(0);
    p.x.k_plus = p.x.k_minus = 0;
    p.validate_case_one();
    int sy = sector_text == "+" ? 1 : (sector_text == "-" ? -1 : 0);
    if (sy == 0) throw ParseError("heun sector must be + or -");
    ShootConfig cfg;
    ResidualGrid grid;
    std::ostringstream os;
    os << kCsvHeader << "kind,level,index,energy_exact,value\n";
    std::vector<LambdaF1Report::Level> pairing;
    for (long N = 0; N < levels; ++N) {
        ShootingProblem pr = make_shooting_problem(p, sy, N);
        std::vector<double> roots = shoot_lambda(pr, cfg);
        LambdaF1Report::Level lv;
        lv.energy = pr.energy;
        lv.lambda = roots;
        DegenerateSpace space =
            build_degenerate_space("caseI", p, pr.energy_exact, Sector{1, sy});
        F1LevelData f1 = f1_on_level(p, space);
        lv.f1 = f1.eigenvalues;
        pairing.push_back(lv);
        for (std::size_t i = 0; i < roots.size(); ++i) {
            os << "lambda," << N << "," << i << "," << to_string(pr.energy_exact) << ","
               << fmt(roots[i]) << "\n";
            double res = parabolic_residual(pr, roots[i], -roots[i], cfg, grid);
            os << "residual," << N << "," << i << "," << to_string(pr.energy_exact) << ","
               << fmt(res) << "\n";
        }
        for (std::size_t i = 0; i < f1.eigenvalues.size(); ++i)
            os << "f1_eigenvalue," << N << "," << i << "," << to_string(pr.energy_exact) << ","
               << fmt(f1.eigenvalues[i]) << "\n";
    }
    LambdaF1Report rep = lambda_vs_f1(pairing);
    os << "fit_a,,,," << fmt(rep.a) << "\n";
    os << "fit_b,,,," << fmt(rep.b) << "\n";
    os << "fit_residual,,,," << fmt(rep.fit_residual) << "\n";
    os << "heldout_error,,,," << fmt(rep.heldout_error) << "\n";
    emit(os.str(), o.out_path, out);
    return 0;
}

int cmd_describe(const CommonOpts& o, const std::string& op_name, std::ostream& out) {
    ModelParams p = parse_params(o);
    auto catalog = operator_catalog(p, o.model);
    auto it = catalog.find(op_name);
    if (it == catalog.end()) {
        std::string names;
        for (const auto& [k, v] : catalog) {
            (void)v;
            names += names.empty() ? k : ", " + k;
        }
        throw ParseError("unknown operator '" + op_name + "'; catalog: " + names);
    }
    emit(it->second.describe(), o.out_path, out);
    return 0;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact engine for singular and 2:1 anisotropic Dunkl oscillators"};
    app.require_subcommand(1);

    CommonOpts common;
    auto add_common = [&common](CLI::App* sub) {
        sub->add_option("--model", common.model, "singular2d | aniso | caseI | caseII");
        sub->add_option("--mu-x", common.mu_x, "Dunkl parameter mu_x as p/q");
        sub->add_option("--mu-y", common.mu_y, "Dunkl parameter mu_y as p/q");
        sub->add_option("--k-x", common.k_x, "k_x^+,k_x^- (integers)");
        sub->add_option("--k-y", common.k_y, "k_y^+,k_y^- (integers)");
        sub->add_option("--out", common.out_path, "output file (default stdout)");
        sub->add_option("--workers", common.workers, "worker threads (default DUNKL_WORKERS)");
    };

    std::string suite = "all";
    bool corrupt = false;
    CLI::App* verify = app.add_subcommand("verify", "run exact identity suites");
    add_common(verify);
    verify->add_option("--suite", suite,
                       "all | su11 | casimir | cubic | hahn | hahn_casimir | slm12 | "
                       "F_algebra | T_algebra");
    verify->add_flag("--corrupt", corrupt, "testing hook: perturb one operator");

    std::string emax = "8";
    CLI::App* spectrum = app.add_subcommand("spectrum", "emit the exact spectrum as CSV");
    add_common(spectrum);
    spectrum->add_option("--emax", emax, "energy cutoff as p/q");

    std::string basis = "cartesian", sector = "++", samples;
    long nx = 0, ny = 0, twice_n = 0, ell = 0;
    CLI::App* wavefn = app.add_subcommand("wavefn", "emit an exact eigenfunction as JSON");
    add_common(wavefn);
    wavefn->add_option("--basis", basis, "cartesian | polar");
    wavefn->add_option("--nx", nx);
    wavefn->add_option("--ny", ny);
    wavefn->add_option("--twice-n", twice_n, "twice the angular label n");
    wavefn->add_option("--ell", ell);
    wavefn->add_option("--sector", sector, "++, +-, -+ or --");
    wavefn->add_option("--samples", samples, "also write a sampled grid CSV to this path");

    long level_index = 0;
    std::string osector = "++";
    CLI::App* overlap = app.add_subcommand("overlap", "K2 level matrix and overlap data");
    add_common(overlap);
    overlap->add_option("--level-index", level_index, "0-based level index in the sector");
    overlap->add_option("--sector", osector);

    std::string hsector = "+";
    long hlevels = 3;
    CLI::App* heun = app.add_subcommand("heun", "parabolic separation constants (case I)");
    add_common(heun);
    heun->add_option("--sector", hsector, "+ or -");
    heun->add_option("--levels", hlevels, "number of lowest levels");

    std::string op_name = "H";
    CLI::App* describe = app.add_subcommand("describe", "print an operator expression tree");
    add_common(describe);
    describe->add_option("--op", op_name, "catalog name, e.g. B0, K2, F1");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (verify->parsed()) return cmd_verify(common, suite, corrupt, out);
        if (spectrum->parsed()) return cmd_spectrum(common, emax, out);
        if (wavefn->parsed())
            return cmd_wavefn(common, basis, nx, ny, twice_n, ell, sector, samples, out);
        if (overlap->parsed()) return cmd_overlap(common, level_index, osector, out);
        if (heun->parsed()) return cmd_heun(common, hsector, hlevels, out);
        if (describe->parsed()) return cmd_describe(common, op_name, out);
        err << "error: no subcommand\n";
        return 2;
    } catch (const ConditionViolation& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const ParityError& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        err << "invalid parameters: " << e.what() << "\n";
        return 2;
    } catch (const EmptyLevelError& e) {
        err << "not found: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 4;
    }
}

} // namespace dunkl
