#include "qsc/io.hpp"

#include "qsc/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace qsc::io {

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "%.12g", x);
    return buffer;
}

double round12(double x) {
    if (!std::isfinite(x)) return x;
    const double r = std::strtod(format_number(x).c_str(), nullptr);
    return r == 0.0 ? 0.0 : r;  // no negative zero in documents
}

json complex_to_json(cplx z) { return json::array({round12(z.real()), round12(z.imag())}); }

cplx complex_from_json(const json &j, const std::string &where) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError(where + ": expected a complex number [re, im]");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

json matrix_to_json(const Matrix &m) {
    json rows = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json &j, int d, const std::string &where) {
    if (!j.is_array() || static_cast<int>(j.size()) != d) {
        throw InputError(where + ": expected " + std::to_string(d) + " rows");
    }
    Matrix m(d, d);
    for (int r = 0; r < d; ++r) {
        const auto &row = j[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != d) {
            throw InputError(where + ": row " + std::to_string(r) + " must have " + std::to_string(d) + " entries");
        }
        for (int c = 0; c < d; ++c) {
            m(r, c) = complex_from_json(row[static_cast<std::size_t>(c)],
                                        where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
        }
    }
    return m;
}

namespace {

void reject_unknown_keys(const json &j, const std::set<std::string> &allowed, const std::string &what) {
    if (!j.is_object()) throw InputError(what + " must be a JSON object");
    for (const auto &item : j.items()) {
        if (!allowed.count(item.key())) {
            throw InputError(what + ": unknown key '" + item.key() + "'");
        }
    }
}

const json &require(const json &j, const std::string &key, const std::string &what) {
    if (!j.contains(key)) throw InputError(what + ": missing key '" + key + "'");
    return j.at(key);
}

int read_dimension(const json &j, const std::string &what) {
    const auto &d = require(j, "d", what);
    if (!d.is_number_integer() || d.get<int>() < 1) throw InputError(what + ": 'd' must be a positive integer");
    return d.get<int>();
}

const char *const kNames[2][2] = {{"00", "01"}, {"10", "11"}};

}  // namespace

FamilyDocument parse_family(const json &j) {
    const std::string what = "coefficient family";
    reject_unknown_keys(j, {"d", "kappa", "E00", "E01", "E10", "E11"}, what);
    const int d = read_dimension(j, what);
    const cplx kappa = complex_from_json(require(j, "kappa", what), "kappa");
    MatrixQuad e;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const std::string key = std::string("E") + kNames[a][b];
            e[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = matrix_from_json(require(j, key, what), d, key);
        }
    }
    return {CoefficientFamily(std::move(e)), DampingConstant(kappa)};
}

json family_to_json(const CoefficientFamily &e, const DampingConstant &k) {
    json j;
    j["d"] = e.dim();
    j["kappa"] = complex_to_json(k.kappa());
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) j[std::string("E") + kNames[a][b]] = matrix_to_json(e(a, b));
    return j;
}

json ito_document(const CoefficientFamily &e, const DampingConstant &k, const ItoConversion &conversion,
                  double residual) {
    json j = family_to_json(e, k);
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) j[std::string("L") + kNames[a][b]] = matrix_to_json(conversion.coefficients(a, b));
    j["unitarity_residual"] = round12(residual);
    j["norm_kappa_E11"] = round12(conversion.kappa_e11_norm);
    j["norm_condition_warning"] = conversion.series_condition_violated;
    return j;
}

ItoCoefficients parse_ito_coefficients(const json &j) {
    const std::string what = "Ito coefficients";
    reject_unknown_keys(j,
                        {"d", "kappa", "E00", "E01", "E10", "E11", "L00", "L01", "L10", "L11", "unitarity_residual",
                         "norm_kappa_E11", "norm_condition_warning"},
                        what);
    const int d = read_dimension(j, what);
    ItoCoefficients l;
    for (int a = 0; a < 2; ++a) {
        for (int b = 0; b < 2; ++b) {
            const std::string key = std::string("L") + kNames[a][b];
            l.l[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = matrix_from_json(require(j, key, what), d, key);
        }
    }
    return l;
}

StepFunction parse_step_function(const json &j) {
    const std::string what = "step function";
    reject_unknown_keys(j, {"breakpoints", "values"}, what);
    const auto &b = require(j, "breakpoints", what);
    const auto &v = require(j, "values", what);
    if (!b.is_array() || !v.is_array()) throw InputError(what + ": breakpoints and values must be arrays");
    std::vector<double> breakpoints;
    for (const auto &x : b) {
        if (!x.is_number()) throw InputError(what + ": breakpoints must be numbers");
        breakpoints.push_back(x.get<double>());
    }
    std::vector<cplx> values;
    for (const auto &x : v) values.push_back(complex_from_json(x, what + " value"));
    return StepFunction(std::move(breakpoints), std::move(values));
}

json step_function_to_json(const StepFunction &f) {
    json j;
    j["breakpoints"] = json::array();
    for (double b : f.breakpoints()) j["breakpoints"].push_back(round12(b));
    j["values"] = json::array();
    for (const auto &v : f.values()) j["values"].push_back(complex_to_json(v));
    return j;
}

std::string markov_scan_csv(const std::vector<MarkovRow> &rows) {
    std::ostringstream os;
    os << "diagram,lambda,abs_integral,re_integral,im_integral,limit_prediction,slope_estimate\n";
    for (const auto &r : rows) {
        os << '"' << r.label << "\"," << format_number(r.lambda) << ',' << format_number(std::abs(r.integral)) << ','
           << format_number(r.integral.real()) << ',' << format_number(r.integral.imag()) << ','
           << format_number(r.limit_prediction) << ',' << format_number(r.slope) << '\n';
    }
    return os.str();
}

}  // namespace qsc::io
