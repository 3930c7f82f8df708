#include "umbra/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace umbra {

Json to_json(const GaussRat& v) {
    Json j;
    j["num"] = rat_string(numerator(v.real()));
    j["den"] = rat_string(denominator(v.real()));
    if (!v.imag().is_zero()) {
        j["inum"] = rat_string(numerator(v.imag()));
        j["iden"] = rat_string(denominator(v.imag()));
    }
    return j;
}

Json to_json(const SpacingScalar& s) {
    Json arr = Json::array();
    for (const auto& [e, c] : s.terms()) {
        Json t = to_json(c);
        Json entry = Json::object();
        if (e.size() <= 1)
            entry["apow"] = e.empty() ? 0 : e[0];
        else
            entry["apow"] = e;
        entry["num"] = t["num"];
        entry["den"] = t["den"];
        if (t.contains("inum")) {
            entry["inum"] = t["inum"];
            entry["iden"] = t["iden"];
        }
        arr.push_back(std::move(entry));
    }
    return arr;
}

Json to_json(const LaurentPoly& p) {
    Json j;
    j["dim"] = p.dim();
    Json terms = Json::array();
    for (const auto& [m, c] : p.terms()) {
        Json t;
        t["exp"] = m;
        t["coef"] = to_json(c);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    return j;
}

namespace {

Rat rat_from_parts(const Json& num, const Json& den) {
    return Rat(Int(num.get<std::string>()), Int(den.get<std::string>()));
}

}  // namespace

SpacingScalar spacing_from_json(const Json& arr) {
    SpacingScalar::TermMap terms;
    for (const auto& entry : arr) {
        SpacingScalar::Exp exp;
        if (entry["apow"].is_array())
            exp = entry["apow"].get<std::vector<int>>();
        else if (int a = entry["apow"].get<int>(); a != 0)
            exp = {a};
        Rat re = rat_from_parts(entry["num"], entry["den"]);
        Rat im(0);
        if (entry.contains("inum")) im = rat_from_parts(entry["inum"], entry["iden"]);
        terms[exp] = GaussRat(re, im);
    }
    return SpacingScalar::from_terms(std::move(terms));
}

LaurentPoly poly_from_json(const Json& j) {
    const int dim = j["dim"].get<int>();
    LaurentPoly::TermMap terms;
    for (const auto& t : j["terms"])
        terms[t["exp"].get<std::vector<int>>()] = spacing_from_json(t["coef"]);
    return LaurentPoly::from_terms(dim, std::move(terms));
}

Json series_to_json(const ShiftInvariantOp& op, int order, int axis) {
    Json j;
    j["label"] = op.label();
    j["order"] = order;
    Json coeffs = Json::array();
    for (int m = 0; m <= order; ++m) coeffs.push_back(to_json(op.coeff1(m, axis)));
    j["coeffs"] = std::move(coeffs);
    if (const auto stencil = render_shift_stencil(op, axis)) j["shift_form"] = *stencil;
    return j;
}

std::string render_series(const ShiftInvariantOp& op, int order, int axis) {
    std::ostringstream os;
    bool first = true;
    for (int m = 0; m <= order; ++m) {
        const SpacingScalar c = op.coeff1(m, axis);
        if (c.is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        if (m == 0) {
            os << c;
            continue;
        }
        const bool trivial = c == SpacingScalar(1);
        if (!trivial) {
            const bool sum = c.terms().size() > 1;
            os << (sum ? "(" : "") << c << (sum ? ")" : "") << "*";
        }
        os << "D";
        if (m > 1) os << "^" << m;
    }
    if (first) os << "0";
    if (order >= 0) os << " + O(D^" << order + 1 << ")";
    return os.str();
}

std::optional<std::string> render_shift_stencil(const ShiftInvariantOp& op, int axis,
                                                int max_half_width, int verify_order) {
    for (int half = 0; half <= max_half_width; ++half) {
        const int count = 2 * half + 1;
        // rho_m := c_m m! a^{-m} must satisfy rho_m = sum_s w_s s^m.
        std::vector<SpacingScalar> rho;
        for (int m = 0; m < count; ++m) {
            SpacingScalar c = op.coeff1(m, axis);
            c = c * SpacingScalar(Rat(factorial(static_cast<unsigned>(m))));
            rho.push_back(c * SpacingScalar::symbol(axis, -m));
        }
        // Vandermonde solve over the rationals, right-hand sides in the ring.
        std::vector<std::vector<Rat>> mat(static_cast<size_t>(count),
                                          std::vector<Rat>(static_cast<size_t>(count)));
        for (int m = 0; m < count; ++m)
            for (int s = -half; s <= half; ++s) {
                Rat v(1);
                for (int i = 0; i < m; ++i) v *= Rat(s);
                mat[static_cast<size_t>(m)][static_cast<size_t>(s + half)] = v;
            }
        std::vector<SpacingScalar> rhs = rho;
        // Gauss elimination with rational pivots.
        bool singular = false;
        for (int col = 0; col < count && !singular; ++col) {
            int pivot = -1;
            for (int r = col; r < count; ++r)
                if (!mat[static_cast<size_t>(r)][static_cast<size_t>(col)].is_zero()) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) {
                singular = true;
                break;
            }
            std::swap(mat[static_cast<size_t>(col)], mat[static_cast<size_t>(pivot)]);
            std::swap(rhs[static_cast<size_t>(col)], rhs[static_cast<size_t>(pivot)]);
            const Rat inv = Rat(1) / mat[static_cast<size_t>(col)][static_cast<size_t>(col)];
            for (int j = 0; j < count; ++j) mat[static_cast<size_t>(col)][static_cast<size_t>(j)] *= inv;
            rhs[static_cast<size_t>(col)] = rhs[static_cast<size_t>(col)] * SpacingScalar(inv);
            for (int r = 0; r < count; ++r) {
                if (r == col) continue;
                const Rat f = mat[static_cast<size_t>(r)][static_cast<size_t>(col)];
                if (f.is_zero()) continue;
                for (int j = 0; j < count; ++j)
                    mat[static_cast<size_t>(r)][static_cast<size_t>(j)] -=
                        f * mat[static_cast<size_t>(col)][static_cast<size_t>(j)];
                rhs[static_cast<size_t>(r)] -= rhs[static_cast<size_t>(col)] * SpacingScalar(f);
            }
        }
        if (singular) continue;

        // Verify the candidate stencil well beyond the solve window.
        bool match = true;
        for (int m = 0; m <= verify_order && match; ++m) {
            SpacingScalar want;
            for (int s = -half; s <= half; ++s) {
                const SpacingScalar& w = rhs[static_cast<size_t>(s + half)];
                if (w.is_zero()) continue;
                Rat sp(1);
                for (int i = 0; i < m; ++i) sp *= Rat(s);
                want += w * SpacingScalar(sp);
            }
            SpacingScalar got = op.coeff1(m, axis) *
                                SpacingScalar(Rat(factorial(static_cast<unsigned>(m)))) *
                                SpacingScalar::symbol(axis, -m);
            if (got != want) match = false;
        }
        if (!match) continue;

        std::ostringstream os;
        bool first = true;
        for (int s = -half; s <= half; ++s) {
            const SpacingScalar& w = rhs[static_cast<size_t>(s + half)];
            if (w.is_zero()) continue;
            if (!first) os << " + ";
            first = false;
            const bool sum = w.terms().size() > 1;
            os << (sum ? "(" : "") << w << (sum ? ")" : "");
            if (s != 0) os << "*S^" << s;
        }
        if (first) os << "0";
        return os.str();
    }
    return std::nullopt;
}

ManifestWriter::ManifestWriter(std::string subcommand, std::filesystem::path out_dir)
    : subcommand_(std::move(subcommand)), out_dir_(std::move(out_dir)) {}

void ManifestWriter::set_param(const std::string& key, const Json& value) { params_[key] = value; }
void ManifestWriter::set_tolerance(const std::string& key, double value) {
    tolerances_[key] = value;
}
void ManifestWriter::set_residual(const std::string& key, const Json& value) {
    residuals_[key] = value;
}
void ManifestWriter::add_output(const std::filesystem::path& file) {
    outputs_.push_back(file.filename().string());
}

Json ManifestWriter::manifest() const {
    Json j;
    j["schema"] = "umbra-manifest/1";
    j["version"] = "0.1.0";
    j["subcommand"] = subcommand_;
    j["params"] = params_;
    j["tolerances"] = tolerances_;
    j["residuals"] = residuals_;
    j["outputs"] = outputs_;
    return j;
}

std::filesystem::path ManifestWriter::write() const {
    const auto path = out_dir_ / "manifest.json";
    write_json_file(path, manifest());
    return path;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
    f << content;
    if (!f.good()) throw std::runtime_error("write failed for '" + path.string() + "'");
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

}  // namespace umbra
