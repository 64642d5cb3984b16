#include "cli.hpp"

#include "qsc/coefficients.hpp"
#include "qsc/dyson.hpp"
#include "qsc/error.hpp"
#include "qsc/io.hpp"
#include "qsc/oscillator.hpp"
#include "qsc/partitions.hpp"
#include "qsc/toyfock.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <set>
#include <sstream>

namespace qsc::cli {

namespace {

using io::format_number;
using io::json;
using io::round12;

constexpr int kMaxCountingOrder = 200;
// The ODE path is limited by the matrix exponential only.
constexpr double kOdeTolerance = 1e-10;


// ---------------------------------------------------------------------------
// files

std::filesystem::path output_path(const std::string &path) {
    std::filesystem::path p(path);
    if (p.is_relative()) {
        if (const char *dir = std::getenv("QSC_OUTPUT_DIR"); dir != nullptr && *dir != '\0') {
            p = std::filesystem::path(dir) / p;
        }
    }
    return p;
}

void emit(const std::string &text, const std::string &output, std::ostream &out) {
    if (output.empty() || output == "-") {
        out << text;
        return;
    }
    const auto path = output_path(output);
    std::ofstream file(path, std::ios::binary);
    if (!file) throw InputError("cannot open '" + path.string() + "' for writing");
    file << text;
    if (!file) throw InputError("failed writing '" + path.string() + "'");
}

json read_json_file(const std::string &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw InputError("'" + path + "' is not valid JSON: " + e.what());
    }
}

// ---------------------------------------------------------------------------
// value parsing

double parse_real(const std::string &text, const std::string &what) {
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception &) {
        throw InputError(what + ": '" + text + "' is not a number");
    }
    if (used != text.size() || !std::isfinite(value)) throw InputError(what + ": '" + text + "' is not a finite number");
    return value;
}

/// "re" or "re,im"
cplx parse_complex(const std::string &text, const std::string &what) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) return {parse_real(text, what), 0.0};
    return {parse_real(text.substr(0, comma), what), parse_real(text.substr(comma + 1), what)};
}

void require_positive(double x, const std::string &what) {
    if (!(x > 0.0) || !std::isfinite(x)) throw InputError(what + " must be positive");
}

std::string big_to_string(const BigInt &x) { return x.str(); }

json big_to_json(const BigInt &x) {
    if (x <= BigInt(std::numeric_limits<std::uint64_t>::max())) return x.convert_to<std::uint64_t>();
    return x.str();
}

std::string dump(const json &j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// config file: keys become flags of the chosen subcommand unless already given

std::string flag_for_key(std::string key) {
    std::replace(key.begin(), key.end(), '_', '-');
    return "--" + key;
}

bool flag_given(const std::vector<std::string> &args, const std::string &flag) {
    return std::any_of(args.begin(), args.end(), [&](const std::string &a) {
        return a == flag || a.rfind(flag + "=", 0) == 0;
    });
}

std::vector<std::string> config_tokens(const std::string &flag, const json &value) {
    std::vector<std::string> tokens;
    auto scalar = [&](const json &v) -> std::string {
        if (v.is_string()) return v.get<std::string>();
        if (v.is_number_integer()) return std::to_string(v.get<long long>());
        if (v.is_number()) {
            std::ostringstream os;
            os.precision(17);
            os << v.get<double>();
            return os.str();
        }
        throw InputError("config key '" + flag.substr(2) + "' has an unsupported value");
    };
    if (value.is_boolean()) {
        if (value.get<bool>()) tokens.push_back(flag);
    } else if (value.is_array()) {
        for (const auto &v : value) {
            tokens.push_back(flag);
            tokens.push_back(scalar(v));
        }
    } else {
        tokens.push_back(flag);
        tokens.push_back(scalar(value));
    }
    return tokens;
}

/// Pulls `--config PATH` out of args and splices the file's settings in after the
/// subcommand name.  Flags already on the command line win.
std::vector<std::string> apply_config(std::vector<std::string> args, const CLI::App &app) {
    std::optional<std::string> config_path;
    for (std::size_t k = 0; k < args.size(); ++k) {
        if (args[k] == "--config") {
            if (k + 1 >= args.size()) throw InputError("--config needs a path");
            config_path = args[k + 1];
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k), args.begin() + static_cast<std::ptrdiff_t>(k + 2));
            break;
        }
        if (args[k].rfind("--config=", 0) == 0) {
            config_path = args[k].substr(9);
            args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
            break;
        }
    }
    if (!config_path) return args;

    const json config = read_json_file(*config_path);
    if (!config.is_object()) throw InputError("config file must hold a JSON object");

    auto is_subcommand = [&](const std::string &name) {
        for (const auto *sub : app.get_subcommands({})) {
            if (sub->get_name() == name) return true;
        }
        return false;
    };
    auto position = std::find_if(args.begin(), args.end(), is_subcommand);
    if (config.contains("subcommand")) {
        const auto &named = config.at("subcommand");
        if (!named.is_string() || !is_subcommand(named.get<std::string>())) {
            throw InputError("config key 'subcommand' must name a subcommand");
        }
        if (position == args.end()) {
            args.insert(args.begin(), named.get<std::string>());
            position = args.begin();
        } else if (*position != named.get<std::string>()) {
            throw InputError("config file is for '" + named.get<std::string>() + "' but the command line asks for '" +
                             *position + "'");
        }
    }
    if (position == args.end()) throw InputError("no subcommand given on the command line or in the config file");

    const CLI::App *sub = app.get_subcommand(*position);
    const std::vector<std::string> user(position + 1, args.end());
    std::vector<std::string> inserted;
    for (const auto &item : config.items()) {
        if (item.key() == "subcommand") continue;
        const std::string flag = flag_for_key(item.key());
        if (sub->get_option_no_throw(flag) == nullptr) {
            throw InputError("unknown config key '" + item.key() + "' for subcommand '" + sub->get_name() + "'");
        }
        if (flag_given(user, flag)) continue;
        const auto tokens = config_tokens(flag, item.value());
        inserted.insert(inserted.end(), tokens.begin(), tokens.end());
    }
    args.insert(position + 1, inserted.begin(), inserted.end());
    return args;
}

// ---------------------------------------------------------------------------
// combinatorics

struct CombinatoricsArgs {
    int n = 0;
    bool enumerate = false;
    std::string format = "text";
};

void cmd_combinatorics(const CombinatoricsArgs &a, std::ostream &out) {
    if (a.n < 0 || a.n > kMaxCountingOrder) {
        throw EnumerationBoundError("combinatorics needs 0 <= n <= " + std::to_string(kMaxCountingOrder));
    }
    const auto row = stirling2_row(a.n);
    const auto first = row.begin() + (a.n == 0 ? 0 : 1);
    const BigInt b = bell(a.n);
    const BigInt pairs = pair_partition_count(a.n);
    std::optional<BigInt> enumerated;
    if (a.enumerate) {
        if (a.n < 1 || a.n > kMaxSetPartitionVertices) {
            throw EnumerationBoundError("--enumerate needs 1 <= n <= " + std::to_string(kMaxSetPartitionVertices));
        }
        BigInt count = 0;
        for (const auto &partition : enumerate_set_partitions(a.n)) {
            (void)partition;
            ++count;
        }
        enumerated = count;
    }

    if (a.format == "json") {
        json j;
        j["n"] = a.n;
        j["stirling2"] = json::array();
        for (auto it = first; it != row.end(); ++it) j["stirling2"].push_back(big_to_json(*it));
        j["bell"] = big_to_json(b);
        j["pair_partitions"] = big_to_json(pairs);
        if (enumerated) j["enumerated"] = big_to_json(*enumerated);
        out << dump(j);
        return;
    }
    out << "n: " << a.n << "\n";
    out << "stirling2:";
    for (auto it = first; it != row.end(); ++it) out << ' ' << big_to_string(*it);
    out << "\nbell: " << big_to_string(b) << "\n";
    out << "pair_partitions: " << big_to_string(pairs) << "\n";
    if (enumerated) out << "enumerated: " << big_to_string(*enumerated) << "\n";
}

// ---------------------------------------------------------------------------
// moments

struct MomentsArgs {
    std::string observable = "q";
    std::optional<int> max_order;
    std::string z = "1";
    double tolerance = 1e-9;
    std::string output;
};

bool cmd_moments(const MomentsArgs &a, std::ostream &out) {
    require_positive(a.tolerance, "--tolerance");
    const Amplitude z{parse_complex(a.z, "--z")};
    const bool is_q = a.observable == "q";
    const int max_order = a.max_order.value_or(is_q ? 12 : 10);
    const int limit = is_q ? kMaxMomentQOrder : kMaxMomentNOrder;
    if (max_order < 0 || max_order > limit) {
        throw EnumerationBoundError("--max-order must lie in 0.." + std::to_string(limit) + " for " + a.observable);
    }
    const OperatorSum factor = is_q ? q_operator() : number_operator();

    std::ostringstream os;
    os << "n,closed_form,diagram_sum,oracle,abs_difference\n";
    bool ok = true;
    for (int n = 0; n <= max_order; ++n) {
        const auto closed = is_q ? moment_q_closed_form(n) : moment_N_stirling(n);
        const auto diagrams = is_q ? moment_q_diagram_sum(n) : moment_N_partition_sum(n);
        const double c = closed.evaluate(z.abs2());
        const double s = diagrams.evaluate(z.abs2());
        // truncation only bites once the ladder count reaches D - 1
        const int dim = is_q ? n + 4 : 2 * n + 2;
        const std::vector<OperatorSum> factors(static_cast<std::size_t>(n), factor);
        const double oracle = vacuum_moment_numeric(factors, dim, z).real();
        const double diff = std::max(std::abs(c - s), std::abs(c - oracle));
        if (!(closed == diagrams) || std::abs(c - oracle) > a.tolerance * std::max(1.0, std::abs(c))) ok = false;
        os << n << ',' << format_number(c) << ',' << format_number(s) << ',' << format_number(oracle) << ','
           << format_number(diff) << '\n';
    }
    emit(os.str(), a.output, out);
    return ok;
}

// ---------------------------------------------------------------------------
// ito-coeffs

struct ItoArgs {
    std::string input;
    std::string output;
    double tolerance = 1e-10;
};

bool cmd_ito_coeffs(const ItoArgs &a, std::ostream &out, std::ostream &err) {
    require_positive(a.tolerance, "--tolerance");
    const auto doc = io::parse_family(read_json_file(a.input));
    const auto conversion = ito_convert(doc.family, doc.damping);
    const double residual = unitarity_residual(conversion.coefficients, doc.damping.gamma());
    emit(dump(io::ito_document(doc.family, doc.damping, conversion, residual)), a.output, out);
    if (conversion.series_condition_violated) {
        err << "warning: ||kappa E11|| = " << format_number(conversion.kappa_e11_norm)
            << " is not below 1; the scattering series diverges\n";
    }
    if (!(residual < a.tolerance)) {
        err << "unitarity residual " << format_number(residual) << " exceeds tolerance " << format_number(a.tolerance)
            << "\n";
        return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// evolve

struct EvolveArgs {
    std::string input;
    std::string output;
    std::vector<std::string> methods{"series", "ode", "toyfock"};
    double t = 1.0;
    bool vacuum = false;
    std::string f_const;
    std::string g_const;
    std::string f_step;
    std::string g_step;
    int n_max = 12;
    int slots = 256;
    std::string propagator = "first-order";
};

ItoCoefficients load_coefficients(const std::string &path) {
    const json j = read_json_file(path);
    if (j.is_object() && j.contains("L00")) return io::parse_ito_coefficients(j);
    const auto doc = io::parse_family(j);
    return ito_coefficients(doc.family, doc.damping);
}

StepFunction test_function(const EvolveArgs &a, const std::string &constant, const std::string &step, const char *name) {
    if (a.vacuum) {
        if (!constant.empty() || !step.empty()) {
            throw InputError(std::string("--vacuum cannot be combined with a value for ") + name);
        }
        return StepFunction::zero(a.t);
    }
    if (!constant.empty() && !step.empty()) {
        throw InputError(std::string("give either a constant or a step file for ") + name + ", not both");
    }
    if (!step.empty()) {
        auto f = io::parse_step_function(read_json_file(step));
        if (f.end() < a.t * (1 - 1e-12)) throw InputError(std::string(name) + " does not cover [0, t]");
        return f;
    }
    if (!constant.empty()) return StepFunction::constant(a.t, parse_complex(constant, name));
    return StepFunction::zero(a.t);
}

bool cmd_evolve(const EvolveArgs &a, std::ostream &out) {
    require_positive(a.t, "--t");
    const std::set<std::string> methods(a.methods.begin(), a.methods.end());
    for (const auto &m : methods) {
        if (m != "series" && m != "ode" && m != "toyfock") throw InputError("unknown method '" + m + "'");
    }
    if (a.slots < 1) throw InputError("--slots must be positive");
    const SlotPropagator mode =
        a.propagator == "exponential" ? SlotPropagator::exponential : SlotPropagator::first_order;

    const auto l = load_coefficients(a.input);
    const auto f = test_function(a, a.f_const, a.f_step, "f");
    const auto g = test_function(a, a.g_const, a.g_step, "g");

    struct Result {
        Matrix value;
        double bound;
    };
    std::vector<std::pair<std::string, Result>> results;
    json j;
    j["t"] = round12(a.t);
    j["d"] = l.dim();
    j["normalization"] = io::complex_to_json(coherent_normalization(f, g, a.t));
    j["methods"] = json::object();
    // Fixed order: series, ode, toyfock.
    if (methods.count("series")) {
        const auto s = series_matrix_element(l, f, g, a.t, a.n_max);
        j["methods"]["series"] = {{"matrix", io::matrix_to_json(s.value)},
                                  {"n_max", a.n_max},
                                  {"error_bound", round12(s.tail_bound)}};
        results.push_back({"series", {s.value, s.tail_bound}});
    }
    if (methods.count("ode")) {
        const Matrix m = ode_matrix_element(l, f, g, a.t);
        const double bound = kOdeTolerance * std::max(1.0, spectral_norm(m));
        j["methods"]["ode"] = {{"matrix", io::matrix_to_json(m)}, {"error_bound", round12(bound)}};
        results.push_back({"ode", {m, bound}});
    }
    if (methods.count("toyfock")) {
        const auto c = coherent_matrix_element(l, f, g, SlotLattice(a.t, a.slots), mode);
        j["methods"]["toyfock"] = {{"matrix", io::matrix_to_json(c.transfer)},
                                   {"slots", a.slots},
                                   {"dt", round12(c.dt)},
                                   {"propagator", a.propagator},
                                   {"error_bound", round12(c.error_bound)}};
        results.push_back({"toyfock", {c.transfer, c.error_bound}});
    }

    bool consistent = true;
    j["deviations"] = json::array();
    for (std::size_t x = 0; x < results.size(); ++x) {
        for (std::size_t y = x + 1; y < results.size(); ++y) {
            const double deviation = spectral_norm(results[x].second.value - results[y].second.value);
            const double bound = results[x].second.bound + results[y].second.bound;
            const bool within = deviation <= bound;
            consistent = consistent && within;
            j["deviations"].push_back({{"methods", {results[x].first, results[y].first}},
                                       {"deviation", round12(deviation)},
                                       {"bound", round12(bound)},
                                       {"within", within}});
        }
    }
    j["consistent"] = consistent;
    emit(dump(j), a.output, out);
    return consistent;
}

// ---------------------------------------------------------------------------
// kernels shared by markov-scan and bounds

struct KernelArgs {
    double amplitude = 0.5;
    double tau = 1.0;
    double omega = 0.0;
    std::string table;

    void add_to(CLI::App *sub) {
        sub->add_option("--amplitude", amplitude, "exponential kernel amplitude c")->capture_default_str();
        sub->add_option("--tau", tau, "exponential kernel decay time")->capture_default_str();
        sub->add_option("--omega", omega, "exponential kernel modulation frequency")->capture_default_str();
        sub->add_option("--kernel-table", table, "JSON file {\"step\": h, \"samples\": [[re, im], ...]}");
    }

    KernelSpec build() const {
        if (table.empty()) return KernelSpec::exponential(amplitude, tau, omega);
        const json j = read_json_file(table);
        if (!j.is_object() || !j.contains("step") || !j.contains("samples") || j.size() != 2 ||
            !j.at("step").is_number() || !j.at("samples").is_array()) {
            throw InputError("kernel table must be {\"step\": number, \"samples\": [...]}");
        }
        std::vector<cplx> samples;
        for (const auto &s : j.at("samples")) samples.push_back(io::complex_from_json(s, "kernel sample"));
        return KernelSpec::tabulated(j.at("step").get<double>(), std::move(samples));
    }
};

void check_lambda_grid(const std::vector<double> &lambdas) {
    if (lambdas.empty()) throw InputError("--lambda needs at least one value");
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        require_positive(lambdas[k], "--lambda");
        if (k > 0 && !(lambdas[k] < lambdas[k - 1])) throw InputError("--lambda values must be decreasing");
    }
}

// ---------------------------------------------------------------------------
// markov-scan

struct MarkovArgs {
    std::vector<std::string> diagrams;
    std::optional<int> all_pairs;
    double t = 1.0;
    std::vector<double> lambdas = kDefaultLambdaGrid;
    KernelArgs kernel;
    std::string output;
};

void cmd_markov_scan(const MarkovArgs &a, std::ostream &out) {
    if (!(a.t >= 0.0) || !std::isfinite(a.t)) throw InputError("--t must be a finite value >= 0");
    check_lambda_grid(a.lambdas);
    std::vector<GoldstoneDiagram> diagrams;
    for (const auto &text : a.diagrams) diagrams.push_back(parse_diagram(text));
    if (a.all_pairs) {
        if (*a.all_pairs < 2 || *a.all_pairs > kMaxDiagramIntegralVertices) {
            throw EnumerationBoundError("--all-pairs needs a vertex count in 2.." +
                                        std::to_string(kMaxDiagramIntegralVertices));
        }
        for (const auto &d : enumerate_pair_partitions(*a.all_pairs)) diagrams.push_back(d);
    }
    if (diagrams.empty()) throw InputError("markov-scan needs --diagram or --all-pairs");
    const auto rows = markov_scan(a.kernel.build(), diagrams, a.lambdas, a.t);
    emit(io::markov_scan_csv(rows), a.output, out);
}

// ---------------------------------------------------------------------------
// bounds

struct BoundsArgs {
    KernelArgs kernel;
    int max_vertices = 6;
    std::vector<double> times{0.5, 1.0, 2.0};
    std::vector<double> lambdas = kDefaultLambdaGrid;
    double xi_a = std::log(0.5);
    double xi_b = 0.0;
    int xi_order = 6;
    std::string format = "json";
    std::string output;
};

bool cmd_bounds(const BoundsArgs &a, std::ostream &out) {
    if (a.max_vertices < 0 || a.max_vertices > kMaxDiagramIntegralVertices) {
        throw EnumerationBoundError("--max-vertices must lie in 0.." + std::to_string(kMaxDiagramIntegralVertices));
    }
    if (a.xi_order < 0 || a.xi_order > 40) throw InputError("--xi-order must lie in 0..40");
    check_lambda_grid(a.lambdas);
    for (double t : a.times) {
        if (!(t >= 0.0) || !std::isfinite(t)) throw InputError("--t values must be finite and >= 0");
    }
    const double xi = xi_bound(a.xi_a, a.xi_b);  // rejects A >= 0 before any work
    const auto kernel = a.kernel.build();

    bool all_hold = true;
    json pule = json::array();
    std::ostringstream text;
    for (int n = 0; n <= a.max_vertices; n += 2) {
        for (double lambda : a.lambdas) {
            for (double t : a.times) {
                const auto c = pule_check(kernel, n, lambda, t);
                all_hold = all_hold && c.holds();
                pule.push_back({{"vertices", n},
                                {"lambda", round12(lambda)},
                                {"t", round12(t)},
                                {"measured", round12(c.measured)},
                                {"bound", round12(c.bound)},
                                {"holds", c.holds()}});
                text << "pule vertices=" << n << " lambda=" << format_number(lambda) << " t=" << format_number(t)
                     << " measured=" << format_number(c.measured) << " bound=" << format_number(c.bound) << ' '
                     << (c.holds() ? "pass" : "FAIL") << '\n';
            }
        }
    }
    json restricted = json::array(), partial = json::array();
    double running = 0.0;
    bool xi_holds = true;
    for (int n = 0; n <= a.xi_order; ++n) {
        const double r = xi_restricted_sum(a.xi_a, a.xi_b, n);
        running += r;
        xi_holds = xi_holds && running <= xi;
        restricted.push_back(round12(r));
        partial.push_back(round12(running));
        text << "xi n=" << n << " restricted=" << format_number(r) << " partial=" << format_number(running)
             << " bound=" << format_number(xi) << ' ' << (running <= xi ? "pass" : "FAIL") << '\n';
    }
    all_hold = all_hold && xi_holds;

    if (a.format == "text") {
        text << "xi A=" << format_number(a.xi_a) << " B=" << format_number(a.xi_b) << " value=" << format_number(xi)
             << '\n';
        text << (all_hold ? "all dominations hold" : "domination FAILED") << '\n';
        emit(text.str(), a.output, out);
    } else {
        json j;
        j["kappa_abs"] = round12(kernel.abs_half_integral());
        j["pule"] = std::move(pule);
        j["xi"] = {{"A", round12(a.xi_a)},
                   {"B", round12(a.xi_b)},
                   {"value", round12(xi)},
                   {"restricted_sums", std::move(restricted)},
                   {"partial_sums", std::move(partial)},
                   {"holds", xi_holds}};
        j["all_hold"] = all_hold;
        emit(dump(j), a.output, out);
    }
    return all_hold;
}

// ---------------------------------------------------------------------------
// render

struct RenderArgs {
    std::string diagram;
    std::string format = "text";
    std::string output;
};

void cmd_render(const RenderArgs &a, std::ostream &out) {
    emit(render_diagram(parse_diagram(a.diagram), parse_render_format(a.format)), a.output, out);
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    CLI::App app{"Diagrammatic quantum stochastic calculus: combinatorics, moments, Ito coefficients, "
                 "evolution and Markov-limit checks"};
    app.name("qsc");
    app.require_subcommand(1);
    app.add_option("--config", "JSON file of option values; command-line flags take precedence");
    app.footer("Exit codes: 0 success, 2 input error, 3 numerical tolerance failure.\n"
               "QSC_OUTPUT_DIR sets the directory for relative --output paths.");

    CombinatoricsArgs comb;
    auto *c = app.add_subcommand("combinatorics", "Stirling row, Bell number and pair-partition count");
    c->add_option("--n", comb.n, "vertex count (0..200)")->required();
    c->add_flag("--enumerate", comb.enumerate, "also count partitions by enumeration (n <= 14)");
    c->add_option("--format", comb.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();

    MomentsArgs mom;
    auto *m = app.add_subcommand("moments", "vacuum moments: closed form, diagram sum and truncated-Fock oracle");
    m->add_option("--observable", mom.observable)->check(CLI::IsMember({"q", "N"}))->capture_default_str();
    m->add_option("--max-order", mom.max_order, "largest n (default 12 for q, 10 for N)");
    m->add_option("--z", mom.z, "amplitude as re or re,im")->capture_default_str();
    m->add_option("--tolerance", mom.tolerance, "relative oracle tolerance")->capture_default_str();
    m->add_option("--output", mom.output, "CSV destination (default stdout)");

    ItoArgs ito;
    auto *i = app.add_subcommand("ito-coeffs", "Ito coefficients from a coefficient-family JSON document");
    i->add_option("--input", ito.input, "coefficient family JSON")->required();
    i->add_option("--output", ito.output, "JSON destination (default stdout)");
    i->add_option("--tolerance", ito.tolerance, "unitarity residual tolerance")->capture_default_str();

    EvolveArgs evo;
    auto *e = app.add_subcommand("evolve", "coherent matrix elements by series, ODE and toy Fock");
    e->add_option("--input", evo.input, "Ito coefficient or coefficient family JSON")->required();
    e->add_option("--output", evo.output, "JSON destination (default stdout)");
    e->add_option("--method", evo.methods, "series, ode, toyfock (repeatable)")
        ->check(CLI::IsMember({"series", "ode", "toyfock"}));
    e->add_option("--t", evo.t, "time horizon")->capture_default_str();
    e->add_flag("--vacuum", evo.vacuum, "f = g = 0");
    e->add_option("--f-const", evo.f_const, "constant f as re or re,im");
    e->add_option("--g-const", evo.g_const, "constant g as re or re,im");
    e->add_option("--f-step", evo.f_step, "step-function JSON for f");
    e->add_option("--g-step", evo.g_step, "step-function JSON for g");
    e->add_option("--n-max", evo.n_max, "series order (0..24)")->capture_default_str();
    e->add_option("--slots", evo.slots, "toy Fock slot count")->capture_default_str();
    e->add_option("--propagator", evo.propagator, "toy Fock slot propagator")
        ->check(CLI::IsMember({"first-order", "exponential"}))
        ->capture_default_str();

    MarkovArgs mar;
    auto *k = app.add_subcommand("markov-scan", "diagram integrals along a decreasing lambda grid");
    k->add_option("--diagram", mar.diagrams, "diagram as n;(i,j),... (repeatable)");
    k->add_option("--all-pairs", mar.all_pairs, "add every pair diagram on this many vertices");
    k->add_option("--t", mar.t, "time horizon")->capture_default_str();
    k->add_option("--lambda", mar.lambdas, "decreasing lambda grid")->capture_default_str();
    mar.kernel.add_to(k);
    k->add_option("--output", mar.output, "CSV destination (default stdout)");

    BoundsArgs bnd;
    auto *b = app.add_subcommand("bounds", "Pule domination and the Xi(A, B) majorant");
    bnd.kernel.add_to(b);
    b->add_option("--max-vertices", bnd.max_vertices, "largest even vertex count (<= 6)")->capture_default_str();
    b->add_option("--t", bnd.times, "times to check")->capture_default_str();
    b->add_option("--lambda", bnd.lambdas, "decreasing lambda grid")->capture_default_str();
    b->add_option("--xi-a", bnd.xi_a, "A = ln ||kappa E11||")->capture_default_str();
    b->add_option("--xi-b", bnd.xi_b, "B = ln(C max(t, 1))")->capture_default_str();
    b->add_option("--xi-order", bnd.xi_order, "largest n for the restricted sums")->capture_default_str();
    b->add_option("--format", bnd.format)->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    b->add_option("--output", bnd.output, "destination (default stdout)");

    RenderArgs ren;
    auto *r = app.add_subcommand("render", "draw a diagram as text or SVG");
    r->add_option("--diagram", ren.diagram, "diagram as n;(i,j),...")->required();
    r->add_option("--format", ren.format)->check(CLI::IsMember({"text", "svg"}))->capture_default_str();
    r->add_option("--output", ren.output, "destination (default stdout)");

    try {
        std::vector<std::string> expanded = apply_config(args, app);
        std::reverse(expanded.begin(), expanded.end());
        app.parse(expanded);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError &ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
        return kInputError;
    }

    try {
        bool ok = true;
        if (c->parsed()) cmd_combinatorics(comb, out);
        if (m->parsed()) ok = cmd_moments(mom, out);
        if (i->parsed()) ok = cmd_ito_coeffs(ito, out, err);
        if (e->parsed()) ok = cmd_evolve(evo, out);
        if (k->parsed()) cmd_markov_scan(mar, out);
        if (b->parsed()) ok = cmd_bounds(bnd, out);
        if (r->parsed()) cmd_render(ren, out);
        return ok ? kSuccess : kToleranceFailure;
    } catch (const InputError &ex) {
        err << "error: " << ex.what() << "\n";
    } catch (const EnumerationBoundError &ex) {
        err << "error: " << ex.what() << "\n";
    } catch (const DomainError &ex) {
        err << "error: " << ex.what() << "\n";
    } catch (const json::exception &ex) {
        err << "error: malformed document: " << ex.what() << "\n";
    } catch (const std::exception &ex) {
        err << "error: " << ex.what() << "\n";
    }
    return kInputError;
}

}  // namespace qsc::cli
