// umbra: exact umbral-calculus engine and lattice spectral laboratory.
// One subcommand per computation; every run writes its data files plus a
// manifest.json describing inputs, tolerances and residuals.

#include "umbra/evolve.hpp"
#include "umbra/extension.hpp"
#include "umbra/hermite.hpp"
#include "umbra/json_io.hpp"
#include "umbra/modular.hpp"
#include "umbra/newton.hpp"
#include "umbra/oscillator.hpp"
#include "umbra/poincare.hpp"
#include "umbra/stirling.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

using namespace umbra;
namespace fs = std::filesystem;

namespace {

std::string fmt_double(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct CommonOpts {
    std::string out;
    std::string format = "json";
    double tol = 0.0;  // 0 means per-operation default
};

void add_common(CLI::App* cmd, CommonOpts& o) {
    const char* env = std::getenv("UMBRA_OUT");
    o.out = env ? env : ".";
    cmd->add_option("--out", o.out, "output directory (default $UMBRA_OUT or .)");
    cmd->add_option("--format", o.format, "data file format where both exist")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", o.tol, "tolerance override for residual checks");
}

fs::path prepare_outdir(const CommonOpts& o) {
    fs::path dir(o.out);
    fs::create_directories(dir);
    return dir;
}

SpacingScalar spacing_from_flag(const std::string& s) {
    // exact ops keep the symbol: --spacing r means the monomial r * a
    const Rat c = parse_rational(s);
    if (c <= 0) throw std::invalid_argument("--spacing must be positive");
    return SpacingScalar::monomial(GaussRat(c), 0, 1);
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_rational(item));
    if (out.empty()) throw std::invalid_argument("empty list");
    return out;
}

LaurentPoly poly_from_coeff_list(const std::string& s) {
    std::vector<SpacingScalar> coeffs;
    for (const Rat& r : parse_rat_list(s)) coeffs.push_back(SpacingScalar(r));
    return LaurentPoly::univariate(coeffs);
}

Json poly_report(const LaurentPoly& p) {
    Json j;
    j["poly"] = to_json(p);
    j["pretty"] = p.str();
    if (p.univariate_in(0)) {
        Json fb = Json::array();
        for (const auto& c : monomial_to_factorial(p, 0)) fb.push_back(to_json(c));
        j["factorial_coeffs"] = std::move(fb);
    }
    return j;
}

// ---------------------------------------------------------------- exact ops

int run_sequence(const CommonOpts& opts, const std::string& delta, const std::string& spacing,
                 int kmax, bool sheffer) {
    const auto kind = delta_kind_from_string(delta);
    const auto q = make_delta(kind, spacing_from_flag(spacing));
    const auto seq = sheffer ? sheffer_sequence(q) : basic_sequence(q);

    Json out = Json::array();
    for (int k = 0; k <= kmax; ++k) {
        Json row = poly_report(seq.poly(static_cast<unsigned>(k)));
        row["k"] = k;
        if (sheffer) row["value_at_zero"] = to_json(seq.at_zero(static_cast<unsigned>(k)));
        out.push_back(std::move(row));
    }
    Json doc;
    doc["delta"] = series_to_json(q, std::max(kmax, 6));
    doc["flavor"] = sheffer ? "sheffer" : "basic";
    doc["polynomials"] = std::move(out);
    if (sheffer) {
        const auto basic = basic_sequence(q);
        Json exps = Json::array();
        for (int n = 0; n <= kmax; ++n) {
            Json e;
            e["n"] = n;
            Json cs = Json::array();
            for (const auto& c : sheffer_expand(seq, basic, static_cast<unsigned>(n)))
                cs.push_back(to_json(c));
            e["coeffs_in_basic"] = std::move(cs);
            exps.push_back(std::move(e));
        }
        doc["expansion"] = std::move(exps);
    }

    const fs::path dir = prepare_outdir(opts);
    const std::string fname = sheffer ? "sheffer_seq.json" : "basic_seq.json";
    ManifestWriter manifest(sheffer ? "sheffer-seq" : "basic-seq", dir);
    manifest.set_param("delta", delta);
    manifest.set_param("spacing", spacing);
    manifest.set_param("kmax", kmax);
    manifest.set_param("format", opts.format);
    write_json_file(dir / fname, doc);
    manifest.add_output(dir / fname);
    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "k,poly\n";
        for (int k = 0; k <= kmax; ++k)
            csv << k << ",\"" << seq.poly(static_cast<unsigned>(k)).str() << "\"\n";
        const std::string cname = sheffer ? "sheffer_seq.csv" : "basic_seq.csv";
        write_text_file(dir / cname, csv.str());
        manifest.add_output(dir / cname);
    }
    manifest.write();
    return 0;
}

int run_star(const CommonOpts& opts, const std::string& delta, const std::string& spacing,
             const std::string& basis, const std::string& f_str, const std::string& h_str) {
    const auto q = make_delta(delta_kind_from_string(delta), spacing_from_flag(spacing));
    const auto seq = basis == "sheffer" ? sheffer_sequence(q) : basic_sequence(q);
    const LaurentPoly f = poly_from_coeff_list(f_str);
    const LaurentPoly h = poly_from_coeff_list(h_str);
    const LaurentPoly prod = star_product(f, h, seq);

    Json doc;
    doc["f"] = poly_report(f);
    doc["h"] = poly_report(h);
    doc["product"] = poly_report(prod);
    doc["basis"] = basis;

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("star", dir);
    manifest.set_param("delta", delta);
    manifest.set_param("spacing", spacing);
    manifest.set_param("basis", basis);
    manifest.set_param("f", f_str);
    manifest.set_param("g", h_str);
    write_json_file(dir / "star.json", doc);
    manifest.add_output(dir / "star.json");
    manifest.write();
    return 0;
}

int run_map_equation(const CommonOpts& opts, const std::string& delta, const std::string& spacing,
                     const std::vector<std::string>& terms, int degree) {
    const auto q = make_delta(delta_kind_from_string(delta), spacing_from_flag(spacing));
    const auto xhat = basic_xhat(q);

    NormalOrderedOp continuum(1);
    Json term_list = Json::array();
    if (terms.empty()) {
        // default: the harmonic oscillator -1/2 d^2 + 1/2 y^2
        continuum += NormalOrderedOp::from_series(
            ShiftInvariantOp::d_op(1).pow(2).scaled(SpacingScalar(Rat(-1, 2))));
        continuum +=
            NormalOrderedOp::term({2}, ShiftInvariantOp::constant(1, SpacingScalar(Rat(1, 2))));
        term_list.push_back("-1/2 d^2");
        term_list.push_back("1/2 y^2");
    } else {
        for (const auto& t : terms) {
            // "p,q,c": c * y^p (d/dy)^q
            std::stringstream ss(t);
            std::string xs, ds, cs;
            if (!std::getline(ss, xs, ',') || !std::getline(ss, ds, ',') || !std::getline(ss, cs))
                throw std::invalid_argument("--term expects xpow,dpow,coef");
            const int xp = std::stoi(xs), dp = std::stoi(ds);
            if (xp < 0 || dp < 0) throw std::invalid_argument("--term powers must be >= 0");
            const Rat c = parse_rational(cs);
            continuum += NormalOrderedOp::term(
                {xp},
                ShiftInvariantOp::d_op(1).pow(static_cast<unsigned>(dp)).scaled(SpacingScalar(c)));
            term_list.push_back(t);
        }
    }
    const auto image = map_equation(continuum, q, xhat);

    Json doc;
    doc["input_terms"] = term_list;
    Json image_terms = Json::array();
    for (const auto& [m, f] : image.terms()) {
        if (f.is_zero_to_order(degree + 4)) continue;
        Json t;
        t["xpow"] = m;
        t["series"] = series_to_json(f, degree + 4);
        t["series_pretty"] = render_series(f, degree + 4);
        image_terms.push_back(std::move(t));
    }
    doc["image"] = std::move(image_terms);
    Json samples = Json::array();
    for (int k = 0; k <= degree; ++k) {
        Json s;
        s["monomial_degree"] = k;
        s["image_of_monomial"] = poly_report(image.apply(LaurentPoly::coordinate(1, 0, k)));
        samples.push_back(std::move(s));
    }
    doc["applications"] = std::move(samples);

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("map-equation", dir);
    manifest.set_param("delta", delta);
    manifest.set_param("spacing", spacing);
    manifest.set_param("degree", degree);
    manifest.set_param("terms", term_list);
    write_json_file(dir / "map_equation.json", doc);
    manifest.add_output(dir / "map_equation.json");
    manifest.write();
    return 0;
}

int run_newton(const CommonOpts& opts, const std::string& k_str, const std::string& spacing_str,
               int kmax, int kcut, const std::string& xs, double threshold) {
    const Rat k = parse_rational(k_str);
    const Rat a = parse_rational(spacing_str);
    if (a <= 0) throw std::invalid_argument("--spacing must be positive");
    const auto series = NewtonSeries::umbral_exp(k, a, static_cast<unsigned>(kmax));

    std::ostringstream csv;
    csv << "n,x,partial_sum,ratio,verdict\n";
    Json summary = Json::array();
    for (const Rat& x : parse_rat_list(xs)) {
        const auto rep = eval_newton(series, x, static_cast<unsigned>(kcut), threshold);
        for (const auto& row : rep.rows)
            csv << row.k << "," << rat_string(x) << "," << rat_string(row.partial_sum) << ","
                << fmt_double(row.ratio) << "," << to_string(rep.verdict) << "\n";
        Json s;
        s["x"] = rat_string(x);
        s["value"] = rat_string(rep.value);
        s["value_double"] = rat_double(rep.value);
        s["verdict"] = to_string(rep.verdict);
        s["max_growth"] = rep.max_growth;
        summary.push_back(std::move(s));
    }

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("newton", dir);
    manifest.set_param("k", k_str);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("kmax", kmax);
    manifest.set_param("kcut", kcut);
    manifest.set_param("x", xs);
    manifest.set_tolerance("blowup_threshold", threshold);
    manifest.set_residual("evaluations", summary);
    write_text_file(dir / "newton.csv", csv.str());
    manifest.add_output(dir / "newton.csv");
    manifest.write();
    return 0;
}

int run_ho_forward(const CommonOpts& opts, int nmax, const std::string& spacing_str, int kcut,
                   double threshold) {
    const Rat a = parse_rational(spacing_str);
    const auto rep =
        ho_forward_solution(static_cast<unsigned>(nmax), a, static_cast<unsigned>(kcut), threshold);

    std::ostringstream csv;
    csv << "n,x,psi,extension_a,extension_b\n";
    const long N = nmax;
    for (long n = -N; n <= N; ++n) {
        csv << n << "," << rat_string(Rat(n) * a) << ",";
        csv << (n >= 0 ? rat_string(rep.psi[static_cast<size_t>(n)]) : "");
        csv << "," << rat_string(rep.extension_a.values[static_cast<size_t>(n + N)]);
        csv << "," << rat_string(rep.extension_b.values[static_cast<size_t>(n + N)]) << "\n";
    }

    Json res;
    res["difference_eq_exact"] = rep.difference_eq_exact;
    res["extension_a_exact"] = rep.extension_a.difference_eq_exact;
    res["extension_b_exact"] = rep.extension_b.difference_eq_exact;
    res["extensions_agree_nonneg"] = rep.extensions_agree_nonneg;
    res["extensions_differ_negative"] = rep.extensions_differ_negative;
    res["growth_at_half_spacing"] = rep.growth_at_half;
    res["diverging_at_half_spacing"] = rep.diverging_at_half;

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("ho-forward", dir);
    manifest.set_param("nmax", nmax);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("kcut", kcut);
    manifest.set_tolerance("blowup_threshold", threshold);
    manifest.set_residual("report", res);
    write_text_file(dir / "ho_forward.csv", csv.str());
    manifest.add_output(dir / "ho_forward.csv");
    manifest.write();
    return 0;
}

int run_hermite(const CommonOpts& opts, int n, const std::string& delta,
                const std::string& spacing) {
    const auto q = make_delta(delta_kind_from_string(delta), spacing_from_flag(spacing));
    const auto seq = basic_sequence(q);
    Json doc = Json::array();
    for (int j = 0; j <= n; ++j) {
        Json row = poly_report(discrete_hermite(static_cast<unsigned>(j), seq));
        row["n"] = j;
        doc.push_back(std::move(row));
    }
    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("hermite", dir);
    manifest.set_param("n", n);
    manifest.set_param("delta", delta);
    manifest.set_param("spacing", spacing);
    write_json_file(dir / "hermite.json", doc);
    manifest.add_output(dir / "hermite.json");
    if (opts.format == "csv") {
        std::ostringstream csv;
        csv << "n,poly\n";
        for (int j = 0; j <= n; ++j)
            csv << j << ",\"" << discrete_hermite(static_cast<unsigned>(j), seq).str() << "\"\n";
        write_text_file(dir / "hermite.csv", csv.str());
        manifest.add_output(dir / "hermite.csv");
    }
    manifest.write();
    return 0;
}

int run_lie_check(const CommonOpts& opts, const std::string& variant_str, int degree) {
    const auto variant = nd_variant_from_string(variant_str);
    const auto ops = build_nd_ops(LatticeSpecND::symbolic(3), variant);
    const auto rep = verify_so3(ops, degree, degree + 2);

    Json doc = Json::array();
    for (const auto& r : rep.relations) {
        Json item;
        item["relation"] = r.relation;
        item["status"] = r.holds ? "exact" : "failed";
        item["max_residual_degree"] = degree;
        doc.push_back(std::move(item));
    }
    Json root;
    root["relations"] = std::move(doc);
    root["closed"] = rep.closed;
    root["annihilates_radial_invariant"] = rep.annihilates_radial_invariant;

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("lie-check", dir);
    manifest.set_param("variant", variant_str);
    manifest.set_param("degree", degree);
    manifest.set_residual("closed", rep.closed);
    write_json_file(dir / "lie_check.json", root);
    manifest.add_output(dir / "lie_check.json");
    manifest.write();
    return rep.closed ? 0 : 3;
}

int run_sphere(const CommonOpts& opts, const std::string& c_str, const std::string& spacings,
               const std::string& variant_str, long radius) {
    const auto variant = nd_variant_from_string(variant_str);
    const auto spec = LatticeSpecND::with_numeric(parse_rat_list(spacings));
    const Rat c = parse_rational(c_str);
    const auto pts = lattice_sphere(spec, c, variant, radius);

    std::ostringstream csv;
    for (int i = 0; i < spec.dim; ++i) csv << (i ? "," : "") << "x" << (i + 1);
    csv << "\n";
    for (const auto& p : pts) {
        for (size_t i = 0; i < p.size(); ++i) csv << (i ? "," : "") << p[i];
        csv << "\n";
    }

    Json sym = Json::object();
    const auto& aa = *spec.numeric;
    const bool equal_spacings =
        std::all_of(aa.begin(), aa.end(), [&](const Rat& v) { return v == aa.front(); });
    if (equal_spacings) {
        const auto rep = sphere_symmetries_check(pts, spec, variant);
        sym["closed_under_swaps"] = rep.closed_under_swaps;
        sym["closed_under_reflections"] = rep.closed_under_reflections;
        sym["orbit_count"] = rep.orbit_count;
        sym["orbit_sizes"] = rep.orbit_sizes;
    }

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("sphere", dir);
    manifest.set_param("c", c_str);
    manifest.set_param("spacing", spacings);
    manifest.set_param("variant", variant_str);
    manifest.set_param("radius", radius);
    manifest.set_residual("point_count", static_cast<int>(pts.size()));
    if (equal_spacings) manifest.set_residual("symmetries", sym);
    write_text_file(dir / "sphere.csv", csv.str());
    manifest.add_output(dir / "sphere.csv");
    manifest.write();
    return 0;
}

int run_poincare(const CommonOpts& opts, const std::string& kappa_str, int degree,
                 int boost_sign) {
    const Rat kappa = parse_rational(kappa_str);
    const auto rep = poincare_rep(NdVariant::central_symmetric, kappa, boost_sign);
    const auto report = verify_poincare(rep, degree, degree + 2);

    Json doc;
    doc["rotation_sign"] = report.rotation_sign;
    doc["boost_sign"] = boost_sign;
    doc["closed"] = report.closed;
    doc["casimir_central"] = report.casimir_central;
    Json rels = Json::array();
    for (const auto& r : report.relations) {
        Json item;
        item["relation"] = r.relation;
        item["status"] = r.holds ? "exact" : "failed";
        item["max_residual_degree"] = degree;
        rels.push_back(std::move(item));
    }
    doc["relations"] = std::move(rels);

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("poincare", dir);
    manifest.set_param("kappa", kappa_str);
    manifest.set_param("degree", degree);
    manifest.set_param("boost-sign", boost_sign);
    manifest.set_residual("closed", report.closed);
    manifest.set_residual("casimir_central", report.casimir_central);
    write_json_file(dir / "poincare.json", doc);
    manifest.add_output(dir / "poincare.json");
    manifest.write();
    return report.closed ? 0 : 3;
}

int run_doubling(const CommonOpts& opts, int dim, bool with_time, const std::string& spacings) {
    std::vector<Rat> a = spacings.empty() ? std::vector<Rat>(static_cast<size_t>(dim), Rat(1))
                                          : parse_rat_list(spacings);
    if (static_cast<int>(a.size()) != dim)
        throw std::invalid_argument("--spacing list must have --dim entries");
    const auto rep = doubling_count(LatticeSpecND::with_numeric(a), with_time);

    Json doc;
    doc["count"] = rep.count;
    Json zeros = Json::array();
    for (const auto& z : rep.zeros_per_axis) zeros.push_back({z[0], z[1]});
    doc["zero_momenta"] = std::move(zeros);

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("doubling", dir);
    manifest.set_param("dim", dim);
    manifest.set_param("time", with_time);
    manifest.set_param("spacing", spacings.empty() ? "1" : spacings);
    manifest.set_residual("count", rep.count);
    write_json_file(dir / "doubling.json", doc);
    manifest.add_output(dir / "doubling.json");
    manifest.write();
    std::cout << rep.count << "\n";
    return 0;
}

// ------------------------------------------------------------- spectral ops

int run_qp_inverse(const CommonOpts& opts, int N, const std::string& spacing_str) {
    const double a = rat_double(parse_rational(spacing_str));
    if (!qp_invertible(N)) throw std::domain_error("Q' singular (N=2m, m even)");
    const PeriodicLattice lat{N, a, false};
    const auto closed = qp_inverse_closed_form(lat);
    const auto mats = build_matrices(LatticeDesc(lat));
    const double err = (closed - *mats.Qp_inv).cwiseAbs().maxCoeff();
    const bool exact = qp_inverse_exact_identity(N);

    Json doc;
    doc["N"] = N;
    Json w = Json::array();
    for (const auto& r : qp_inverse_weights(N)) w.push_back(rat_string(r));
    doc["shift_weights"] = std::move(w);
    doc["max_error_vs_dense"] = err;
    doc["exact_identity"] = exact;

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("qp-inverse", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_tolerance("dense_inverse", opts.tol > 0 ? opts.tol : 1e-12);
    manifest.set_residual("max_error_vs_dense", err);
    manifest.set_residual("exact_identity", exact);
    manifest.set_residual("ccr_deviation_reported", mats.ccr_deviation);
    write_json_file(dir / "qp_inverse.json", doc);
    manifest.add_output(dir / "qp_inverse.json");
    manifest.write();
    return (exact && err < (opts.tol > 0 ? opts.tol : 1e-12)) ? 0 : 3;
}

int run_dispersion(const CommonOpts& opts, int N, const std::string& spacing_str) {
    const double a = rat_double(parse_rational(spacing_str));
    const auto rep = dispersion_check(PeriodicLattice{N, a, false});

    std::ostringstream csv;
    csv << "index,eigenvalue,closed_form,abs_err\n";
    for (size_t j = 0; j < rep.eigenvalues.size(); ++j)
        csv << j << "," << fmt_double(rep.eigenvalues[j]) << "," << fmt_double(rep.expected[j])
            << "," << fmt_double(std::abs(rep.eigenvalues[j] - rep.expected[j])) << "\n";

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("dispersion", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_tolerance("eigenvalues", opts.tol > 0 ? opts.tol : 1e-12);
    manifest.set_residual("max_abs_error", rep.max_abs_error);
    manifest.set_residual("spectral_radius", rep.spectral_radius);
    manifest.set_residual("bound", rep.bound);
    manifest.set_residual("bound_respected", rep.bound_respected);
    write_text_file(dir / "dispersion.csv", csv.str());
    manifest.add_output(dir / "dispersion.csv");
    manifest.write();
    return rep.max_abs_error < (opts.tol > 0 ? opts.tol : 1e-12) && rep.bound_respected ? 0 : 3;
}

int run_xhat_spectrum(const CommonOpts& opts, int N, const std::string& spacing_str, double alpha1,
                      double alpha2, int n_lo, int n_hi) {
    const double a = rat_double(parse_rational(spacing_str));
    const TruncatedLattice lat{N, a};
    const auto rep = xhat_eigenfunctions(ExtensionParams{alpha1, alpha2}, lat, n_lo, n_hi);

    std::ostringstream spectrum;
    spectrum << "index,eigenvalue,pair_id\n";
    std::ostringstream funcs;
    funcs << "n,branch,site,re,im\n";
    const auto sites = lat.sites();
    for (size_t m = 0; m < rep.pairs.size(); ++m) {
        const auto& p = rep.pairs[m];
        spectrum << m << "," << fmt_double(p.eigenvalue) << "," << p.branch << "\n";
        for (Eigen::Index j = 0; j < p.f.size(); ++j)
            funcs << p.n << "," << p.branch << "," << fmt_double(sites[static_cast<size_t>(j)])
                  << "," << fmt_double(p.f(j).real()) << "," << fmt_double(p.f(j).imag()) << "\n";
    }

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("xhat-spectrum", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("alpha", alpha1);
    manifest.set_param("alpha2", alpha2);
    manifest.set_param("nmin", n_lo);
    manifest.set_param("nmax", n_hi);
    manifest.set_tolerance("residual", opts.tol > 0 ? opts.tol : 1e-6);
    manifest.set_residual("max_residual", rep.max_residual);
    manifest.set_residual("max_tail_fraction", rep.max_tail_fraction);
    manifest.set_residual("same_branch_spacing", rep.spacing);
    manifest.set_residual("dense_second_gap_median", rep.dense_second_gap_median);
    write_text_file(dir / "xhat_spectrum.csv", spectrum.str());
    write_text_file(dir / "xhat_eigenfunctions.csv", funcs.str());
    manifest.add_output(dir / "xhat_spectrum.csv");
    manifest.add_output(dir / "xhat_eigenfunctions.csv");
    manifest.write();
    return rep.max_residual < (opts.tol > 0 ? opts.tol : 1e-6) ? 0 : 3;
}

int run_oscillator(const CommonOpts& opts, int N, const std::string& spacing_str, int pairs) {
    const double a = rat_double(parse_rational(spacing_str));
    const auto rep = oscillator_spectrum(PeriodicLattice{N, a, true}, pairs);

    std::ostringstream csv;
    csv << "index,eigenvalue,pair_id\n";
    for (size_t j = 0; j < rep.eigenvalues.size(); ++j)
        csv << j << "," << fmt_double(rep.eigenvalues[j]) << "," << rep.pair_id[j] << "\n";

    Json pj = Json::array();
    for (size_t j = 0; j < rep.pairs.size(); ++j) {
        Json p;
        p["pair"] = j;
        p["mean"] = rep.pairs[j].mean;
        p["splitting"] = rep.pairs[j].splitting;
        if (j < rep.oracle.size()) p["oracle"] = rep.oracle[j];
        pj.push_back(std::move(p));
    }

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("oscillator", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("pairs", pairs);
    manifest.set_tolerance("pair_splitting", 1e-6);
    manifest.set_tolerance("mean_vs_oracle", 1e-3);
    manifest.set_residual("max_pair_splitting", rep.max_pair_splitting);
    manifest.set_residual("max_mean_vs_oracle", rep.max_mean_vs_oracle);
    manifest.set_residual("pairs", pj);
    write_text_file(dir / "spectrum.csv", csv.str());
    manifest.add_output(dir / "spectrum.csv");
    manifest.write();
    return rep.paired && rep.max_pair_splitting < 1e-6 && rep.max_mean_vs_oracle < 1e-3 ? 0 : 3;
}

int run_ground_state(const CommonOpts& opts, int N, const std::string& spacing_str, double alpha,
                     int modes) {
    const double a = rat_double(parse_rational(spacing_str));
    const TruncatedLattice lat{N, a};
    const auto rep = ground_state_pspace(alpha, lat, modes);

    std::ostringstream csv;
    csv << "site,re,im\n";
    const auto sites = lat.sites();
    for (Eigen::Index j = 0; j < rep.psi.size(); ++j)
        csv << fmt_double(sites[static_cast<size_t>(j)]) << "," << fmt_double(rep.psi(j).real())
            << "," << fmt_double(rep.psi(j).imag()) << "\n";

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("ground-state", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("alpha", alpha);
    manifest.set_param("modes", modes);
    manifest.set_tolerance("residual", opts.tol > 0 ? opts.tol : 1e-8);
    manifest.set_residual("kappa", Json::array({rep.kappa.real(), rep.kappa.imag()}));
    manifest.set_residual("annihilation_residual", rep.residual);
    manifest.set_residual("synthesis_fit_residual", rep.fit_residual);
    manifest.set_residual("boundary_violation", rep.boundary_violation);
    manifest.set_residual("creation_violation", rep.creation_violation);
    write_text_file(dir / "ground_state.csv", csv.str());
    manifest.add_output(dir / "ground_state.csv");
    manifest.write();
    return rep.residual < (opts.tol > 0 ? opts.tol : 1e-8) ? 0 : 3;
}

int run_evolve(const CommonOpts& opts, int N, const std::string& spacing_str, double tmax,
               int steps, const std::string& state) {
    const double a = rat_double(parse_rational(spacing_str));
    const PeriodicLattice lat{N, a, true};
    const Eigen::MatrixXd h_mat = oscillator_xhat_form(lat);
    const auto h =
        LatticeMatrix::tag(h_mat.cast<std::complex<double>>().eval(), LatticeDesc(lat), 1e-10);

    Eigen::VectorXcd psi0;
    if (state == "packet") {
        psi0 = gaussian_packet(LatticeDesc(lat), 0.0, 1.0, 0.5);
    } else if (state.rfind("eigen:", 0) == 0) {
        const int idx = std::stoi(state.substr(6));
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h_mat);
        if (idx < 0 || idx >= N) throw std::invalid_argument("eigenstate index out of range");
        psi0 = es.eigenvectors().col(idx).cast<std::complex<double>>();
    } else {
        throw std::invalid_argument("--state must be 'packet' or 'eigen:<index>'");
    }

    std::vector<double> ts;
    for (int i = 0; i <= steps; ++i) ts.push_back(tmax * i / steps);
    const auto traj = evolve(h, WaveState{psi0, 0.0}, ts);
    const auto agreement = string_agreement_report(lat);

    std::ostringstream csv;
    csv << "t,site,re,im\n";
    const auto sites = lat.sites();
    for (size_t i = 0; i < traj.times.size(); ++i)
        for (Eigen::Index j = 0; j < traj.states[i].size(); ++j)
            csv << fmt_double(traj.times[i]) << "," << fmt_double(sites[static_cast<size_t>(j)])
                << "," << fmt_double(traj.states[i](j).real()) << ","
                << fmt_double(traj.states[i](j).imag()) << "\n";

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("evolve", dir);
    manifest.set_param("N", N);
    manifest.set_param("spacing", spacing_str);
    manifest.set_param("tmax", tmax);
    manifest.set_param("steps", steps);
    manifest.set_param("state", state);
    manifest.set_tolerance("norm_drift", 1e-10);
    manifest.set_tolerance("energy_drift", 1e-8);
    manifest.set_residual("max_norm_drift", traj.max_norm_drift);
    manifest.set_residual("max_energy_drift", traj.max_energy_drift);
    manifest.set_residual("string_matrix_deviation", agreement.matrix_deviation);
    manifest.set_residual("string_seam_explained", agreement.seam_explained);
    manifest.set_residual("string_seam_residual", agreement.explained_residual);
    write_text_file(dir / "trajectory.csv", csv.str());
    manifest.add_output(dir / "trajectory.csv");
    manifest.write();
    return traj.max_norm_drift < 1e-10 && traj.max_energy_drift < 1e-8 ? 0 : 3;
}

int run_ff_rep(const CommonOpts& opts, int p) {
    const auto rep = finite_field_rep(p);
    const auto mat_json = [](const ModMatrix& m) {
        Json rows = Json::array();
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            Json row = Json::array();
            for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
            rows.push_back(std::move(row));
        }
        return rows;
    };
    Json doc;
    doc["p"] = p;
    doc["x"] = mat_json(rep.x);
    doc["q"] = mat_json(rep.q);
    doc["qprime"] = mat_json(rep.qprime);
    doc["xhat"] = mat_json(rep.xhat);
    doc["qprime_equals_q"] = rep.qprime_equals_q;
    doc["ccr_holds"] = rep.ccr_holds;

    const fs::path dir = prepare_outdir(opts);
    ManifestWriter manifest("ff-rep", dir);
    manifest.set_param("p", p);
    manifest.set_residual("ccr_holds", rep.ccr_holds);
    write_json_file(dir / "ff_rep.json", doc);
    manifest.add_output(dir / "ff_rep.json");
    manifest.write();
    return rep.ccr_holds ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"umbra: exact umbral-calculus engine and lattice spectral laboratory"};
    app.require_subcommand(1);
    std::function<int()> runner;

    const std::vector<std::string> kinds{"derivative", "forward", "backward", "central",
                                         "laguerre"};

    // exact operations
    {
        auto* cmd =
            app.add_subcommand("basic-seq", "basic polynomial sequence of a delta operator");
        auto opts = std::make_shared<CommonOpts>();
        auto delta = std::make_shared<std::string>("forward");
        auto spacing = std::make_shared<std::string>("1");
        auto kmax = std::make_shared<int>(6);
        cmd->add_option("--delta", *delta, "delta operator kind")->check(CLI::IsMember(kinds));
        cmd->add_option("--spacing", *spacing,
                        "spacing multiple: the symbol a times this rational");
        cmd->add_option("--kmax", *kmax, "highest polynomial index")->check(CLI::Range(0, 64));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_sequence(*opts, *delta, *spacing, *kmax, false); };
        });
    }
    {
        auto* cmd = app.add_subcommand("sheffer-seq", "sheffer set of the symmetrized coordinate");
        auto opts = std::make_shared<CommonOpts>();
        auto delta = std::make_shared<std::string>("central");
        auto spacing = std::make_shared<std::string>("1");
        auto kmax = std::make_shared<int>(6);
        cmd->add_option("--delta", *delta, "delta operator kind")->check(CLI::IsMember(kinds));
        cmd->add_option("--spacing", *spacing, "spacing multiple");
        cmd->add_option("--kmax", *kmax, "highest polynomial index")->check(CLI::Range(0, 64));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_sequence(*opts, *delta, *spacing, *kmax, true); };
        });
    }
    {
        auto* cmd = app.add_subcommand("star", "star product of two polynomials");
        auto opts = std::make_shared<CommonOpts>();
        auto delta = std::make_shared<std::string>("forward");
        auto spacing = std::make_shared<std::string>("1");
        auto basis = std::make_shared<std::string>("basic");
        auto f = std::make_shared<std::string>();
        auto h = std::make_shared<std::string>();
        cmd->add_option("--delta", *delta, "delta operator kind")->check(CLI::IsMember(kinds));
        cmd->add_option("--spacing", *spacing, "spacing multiple");
        cmd->add_option("--basis", *basis, "expansion family")
            ->check(CLI::IsMember({"basic", "sheffer"}));
        cmd->add_option("--f", *f, "monomial coefficients c0,c1,...")->required();
        cmd->add_option("--g", *h, "monomial coefficients c0,c1,...")->required();
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_star(*opts, *delta, *spacing, *basis, *f, *h); };
        });
    }
    {
        auto* cmd = app.add_subcommand("map-equation",
                                       "umbral image of a normal-ordered continuum operator");
        auto opts = std::make_shared<CommonOpts>();
        auto delta = std::make_shared<std::string>("forward");
        auto spacing = std::make_shared<std::string>("1");
        auto degree = std::make_shared<int>(6);
        auto terms = std::make_shared<std::vector<std::string>>();
        cmd->add_option("--delta", *delta, "delta operator kind")->check(CLI::IsMember(kinds));
        cmd->add_option("--spacing", *spacing, "spacing multiple");
        cmd->add_option("--degree", *degree, "sample application degree")->check(CLI::Range(0, 16));
        cmd->add_option("--term", *terms,
                        "continuum term xpow,dpow,coef (repeatable; default: oscillator)");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_map_equation(*opts, *delta, *spacing, *terms, *degree); };
        });
    }
    {
        auto* cmd = app.add_subcommand("newton", "newton series of exp(k y) on the lattice");
        auto opts = std::make_shared<CommonOpts>();
        auto k = std::make_shared<std::string>("1/2");
        auto spacing = std::make_shared<std::string>("1");
        auto kmax = std::make_shared<int>(60);
        auto kcut = std::make_shared<int>(50);
        auto xs = std::make_shared<std::string>("0,1,2,3");
        auto threshold = std::make_shared<double>(1e6);
        cmd->add_option("--k", *k, "exponential rate (rational)");
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--kmax", *kmax, "series truncation")->check(CLI::Range(1, 500));
        cmd->add_option("--kcut", *kcut, "evaluation cutoff")->check(CLI::Range(1, 500));
        cmd->add_option("--x", *xs, "evaluation points, comma-separated rationals");
        cmd->add_option("--threshold", *threshold, "term growth declaring divergence");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_newton(*opts, *k, *spacing, *kmax, *kcut, *xs, *threshold); };
        });
    }
    {
        auto* cmd = app.add_subcommand(
            "ho-forward", "forward-difference oscillator: terminating series and extensions");
        auto opts = std::make_shared<CommonOpts>();
        auto nmax = std::make_shared<int>(30);
        auto spacing = std::make_shared<std::string>("1");
        auto kcut = std::make_shared<int>(50);
        auto threshold = std::make_shared<double>(1e6);
        cmd->add_option("--nmax", *nmax, "lattice range")->check(CLI::Range(4, 200));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--kcut", *kcut, "divergence probe terms")->check(CLI::Range(1, 500));
        cmd->add_option("--threshold", *threshold, "term growth declaring divergence");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_ho_forward(*opts, *nmax, *spacing, *kcut, *threshold); };
        });
    }
    {
        auto* cmd = app.add_subcommand("hermite", "discrete hermite polynomials");
        auto opts = std::make_shared<CommonOpts>();
        auto n = std::make_shared<int>(6);
        auto delta = std::make_shared<std::string>("forward");
        auto spacing = std::make_shared<std::string>("1");
        cmd->add_option("--n", *n, "highest index")->check(CLI::Range(0, 32));
        cmd->add_option("--delta", *delta, "delta operator kind")->check(CLI::IsMember(kinds));
        cmd->add_option("--spacing", *spacing, "spacing multiple");
        add_common(cmd, *opts);
        cmd->callback(
            [=, &runner]() { runner = [=]() { return run_hermite(*opts, *n, *delta, *spacing); }; });
    }
    {
        auto* cmd = app.add_subcommand("lie-check", "so(3) closure of lattice angular momentum");
        auto opts = std::make_shared<CommonOpts>();
        auto variant = std::make_shared<std::string>("forward-basic");
        auto degree = std::make_shared<int>(5);
        cmd->add_option("--variant", *variant, "lattice operator family")
            ->check(CLI::IsMember({"forward-basic", "central-symmetric", "forward", "central"}));
        cmd->add_option("--degree", *degree, "test-space degree")->check(CLI::Range(1, 8));
        add_common(cmd, *opts);
        cmd->callback(
            [=, &runner]() { runner = [=]() { return run_lie_check(*opts, *variant, *degree); }; });
    }
    {
        auto* cmd = app.add_subcommand("sphere", "lattice sphere point enumeration");
        auto opts = std::make_shared<CommonOpts>();
        auto c = std::make_shared<std::string>("0");
        auto spacing = std::make_shared<std::string>("1,1,1");
        auto variant = std::make_shared<std::string>("forward-basic");
        auto radius = std::make_shared<long>(6);
        cmd->add_option("--c", *c, "radial constant (rational)");
        cmd->add_option("--spacing", *spacing, "comma-separated spacings");
        cmd->add_option("--variant", *variant, "lattice operator family")
            ->check(CLI::IsMember({"forward-basic", "central-symmetric", "forward", "central"}));
        cmd->add_option("--radius", *radius, "search box half-width in lattice units")
            ->check(CLI::Range(1L, 64L));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_sphere(*opts, *c, *spacing, *variant, *radius); };
        });
    }
    {
        auto* cmd = app.add_subcommand("poincare", "lattice poincare generators and casimir");
        auto opts = std::make_shared<CommonOpts>();
        auto kappa = std::make_shared<std::string>("1");
        auto degree = std::make_shared<int>(3);
        auto boost_sign = std::make_shared<int>(1);
        cmd->add_option("--kappa", *kappa, "boost parameter (rational)");
        cmd->add_option("--degree", *degree, "test-space degree")->check(CLI::Range(1, 6));
        cmd->add_option("--boost-sign", *boost_sign, "+1 keeps the stated casimir central")
            ->check(CLI::IsMember({1, -1}));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_poincare(*opts, *kappa, *degree, *boost_sign); };
        });
    }
    {
        auto* cmd = app.add_subcommand("doubling", "field species count from dispersion zeros");
        auto opts = std::make_shared<CommonOpts>();
        auto dim = std::make_shared<int>(3);
        auto with_time = std::make_shared<bool>(false);
        auto spacing = std::make_shared<std::string>();
        cmd->add_option("--dim", *dim, "spatial dimension")->check(CLI::Range(1, 8));
        cmd->add_flag("--time", *with_time, "discretize the time direction as well");
        cmd->add_option("--spacing", *spacing, "comma-separated spacings (default all 1)");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_doubling(*opts, *dim, *with_time, *spacing); };
        });
    }

    // spectral operations
    {
        auto* cmd = app.add_subcommand("qp-inverse", "closed-form periodic inverse of Q'");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(6);
        auto spacing = std::make_shared<std::string>("1");
        cmd->add_option("--N", *N, "site count")->required()->check(CLI::Range(2, 4096));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        add_common(cmd, *opts);
        cmd->callback(
            [=, &runner]() { runner = [=]() { return run_qp_inverse(*opts, *N, *spacing); }; });
    }
    {
        auto* cmd = app.add_subcommand("dispersion", "momentum spectrum vs sin(ak)/a");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(101);
        auto spacing = std::make_shared<std::string>("1");
        cmd->add_option("--N", *N, "site count")->check(CLI::Range(2, 4096));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        add_common(cmd, *opts);
        cmd->callback(
            [=, &runner]() { runner = [=]() { return run_dispersion(*opts, *N, *spacing); }; });
    }
    {
        auto* cmd =
            app.add_subcommand("xhat-spectrum", "extension eigenfunctions and pi*a ladders");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(401);
        auto spacing = std::make_shared<std::string>("1");
        auto alpha1 = std::make_shared<double>(0.0);
        auto alpha2 = std::make_shared<double>(0.0);
        auto nmin = std::make_shared<int>(-2);
        auto nmax = std::make_shared<int>(2);
        cmd->add_option("--N", *N, "window size (odd)")->check(CLI::Range(3, 8192));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--alpha", *alpha1, "branch-1 extension angle in [0,1)");
        auto* a2opt = cmd->add_option("--alpha2", *alpha2,
                                      "branch-2 extension angle in [0,1); defaults to --alpha");
        cmd->add_option("--nmin", *nmin, "lowest ladder index");
        cmd->add_option("--nmax", *nmax, "highest ladder index");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            const double a2 = a2opt->count() > 0 ? *alpha2 : *alpha1;
            runner = [=]() {
                return run_xhat_spectrum(*opts, *N, *spacing, *alpha1, a2, *nmin, *nmax);
            };
        });
    }
    {
        auto* cmd =
            app.add_subcommand("oscillator", "doubled oscillator spectrum vs p-space oracle");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(454);
        auto spacing = std::make_shared<std::string>("1/15");
        auto pairs = std::make_shared<int>(5);
        cmd->add_option("--N", *N, "site count, N = 2m with m odd")->check(CLI::Range(6, 4096));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--pairs", *pairs, "doubled levels to verify")->check(CLI::Range(1, 32));
        add_common(cmd, *opts);
        cmd->callback(
            [=, &runner]() { runner = [=]() { return run_oscillator(*opts, *N, *spacing, *pairs); }; });
    }
    {
        auto* cmd = app.add_subcommand("ground-state", "annihilation-operator ground state");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(801);
        auto spacing = std::make_shared<std::string>("1/10");
        auto alpha = std::make_shared<double>(0.25);
        auto modes = std::make_shared<int>(32);
        cmd->add_option("--N", *N, "window size (odd)")->check(CLI::Range(3, 8192));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--alpha", *alpha, "extension angle in [0,1)");
        cmd->add_option("--modes", *modes, "modes per branch in the synthesis")
            ->check(CLI::Range(4, 256));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_ground_state(*opts, *N, *spacing, *alpha, *modes); };
        });
    }
    {
        auto* cmd = app.add_subcommand("evolve", "unitary evolution under the mapped oscillator");
        auto opts = std::make_shared<CommonOpts>();
        auto N = std::make_shared<int>(54);
        auto spacing = std::make_shared<std::string>("1/4");
        auto tmax = std::make_shared<double>(10.0);
        auto steps = std::make_shared<int>(1000);
        auto state = std::make_shared<std::string>("packet");
        cmd->add_option("--N", *N, "site count, N = 2m with m odd")->check(CLI::Range(6, 4096));
        cmd->add_option("--spacing", *spacing, "lattice spacing (rational)");
        cmd->add_option("--tmax", *tmax, "final time");
        cmd->add_option("--steps", *steps, "time steps")->check(CLI::Range(1, 100000));
        cmd->add_option("--state", *state, "'packet' or 'eigen:<index>'");
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() {
            runner = [=]() { return run_evolve(*opts, *N, *spacing, *tmax, *steps, *state); };
        });
    }
    {
        auto* cmd = app.add_subcommand("ff-rep", "prime-field matrix representation");
        auto opts = std::make_shared<CommonOpts>();
        auto p = std::make_shared<int>(3);
        cmd->add_option("--p", *p, "prime modulus")->check(CLI::Range(2, 997));
        add_common(cmd, *opts);
        cmd->callback([=, &runner]() { runner = [=]() { return run_ff_rep(*opts, *p); }; });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        return runner ? runner() : 2;
    } catch (const std::domain_error& e) {
        Json err;
        err["error"] = e.what();
        err["kind"] = "domain";
        std::cerr << err.dump() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        Json err;
        err["error"] = e.what();
        err["kind"] = "usage";
        std::cerr << err.dump() << "\n";
        return 2;
    } catch (const std::exception& e) {
        Json err;
        err["error"] = e.what();
        err["kind"] = "internal";
        std::cerr << err.dump() << "\n";
        return 1;
    }
}
