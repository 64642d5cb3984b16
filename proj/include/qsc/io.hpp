#pragma once
// Text interchange: 12-significant-digit number formatting, the coefficient
// family / Ito coefficient JSON documents, step functions and CSV tables.

#include "qsc/coefficients.hpp"
#include "qsc/dyson.hpp"
#include "qsc/step_function.hpp"

#include <json.hpp>

#include <string>

namespace qsc::io {

using json = nlohmann::json;

/// "%.12g"
std::string format_number(double x);
/// x rounded to 12 significant digits, so emitted documents re-parse to the same text.
double round12(double x);

json complex_to_json(cplx z);
cplx complex_from_json(const json &j, const std::string &where);

/// Row-major [[[re, im], ...], ...]
json matrix_to_json(const Matrix &m);
Matrix matrix_from_json(const json &j, int d, const std::string &where);

struct FamilyDocument {
    CoefficientFamily family;
    DampingConstant damping;
};

/// {"d", "kappa", "E00", "E01", "E10", "E11"}; unknown keys are rejected.
FamilyDocument parse_family(const json &j);
json family_to_json(const CoefficientFamily &e, const DampingConstant &k);

/// The family document plus L00..L11, unitarity_residual, norm_kappa_E11 and
/// the norm_condition_warning flag.
json ito_document(const CoefficientFamily &e, const DampingConstant &k, const ItoConversion &conversion,
                  double residual);
ItoCoefficients parse_ito_coefficients(const json &j);

/// {"breakpoints": [...], "values": [[re, im], ...]}
StepFunction parse_step_function(const json &j);
json step_function_to_json(const StepFunction &f);

std::string markov_scan_csv(const std::vector<MarkovRow> &rows);

}  // namespace qsc::io
