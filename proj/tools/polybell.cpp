// polybell: exact tables, series dumps and identity verification for the
// degenerate Stirling/Bell/poly-Bell families attached to a random variable.
// Every value is an exact rational; nothing is ever rounded.

#include <CLI11.hpp>

#include <polybell/identities.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace polybell;

// --output, overridden by POLYBELL_OUTPUT when set.
std::string resolve_output_path(const std::string& flag_value) {
    if (const char* env = std::getenv("POLYBELL_OUTPUT")) return env;
    return flag_value;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open output file: " + path);
    out << text;
}

std::string csv_quote(const std::string& field) { return "\"" + field + "\""; }

// Row coefficients, padded with exact zeros to the column count.
std::vector<rational> padded_coeffs(const polynomial& p, int size) {
    std::vector<rational> out;
    out.reserve(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) out.push_back(p.coeff(i));
    return out;
}

struct table_request {
    std::string family;
    int n_max = 0;
    std::string lambda_text;
    std::string dist_text;
    std::optional<int> k;
    std::string format = "json";
    std::string output;
};

rational require_lambda(const table_request& req) {
    if (req.lambda_text.empty())
        throw std::invalid_argument("--lambda is required for family " + req.family);
    return parse_rational(req.lambda_text);
}

distribution require_dist(const table_request& req) {
    if (req.dist_text.empty())
        throw std::invalid_argument("--dist is required for family " + req.family);
    return parse_distribution(req.dist_text);
}

int run_table(const table_request& req) {
    std::vector<std::vector<rational>> rows;
    json params = json::object();
    params["n_max"] = req.n_max;

    const auto triangle_rows = [&](stirling_kind kind, const rational& lam) {
        const auto& table = stirling_table(kind, lam, req.n_max);
        for (int n = 0; n <= req.n_max; ++n) rows.push_back(table.row(n));
    };

    if (req.family == "stirling1") {
        triangle_rows(stirling_kind::classical_first, 0);
    } else if (req.family == "stirling2") {
        triangle_rows(stirling_kind::classical_second, 0);
    } else if (req.family == "lah") {
        triangle_rows(stirling_kind::lah, 0);
    } else if (req.family == "deg-stirling1" || req.family == "deg-stirling2") {
        const rational lam = require_lambda(req);
        params["lambda"] = to_string(lam);
        triangle_rows(req.family == "deg-stirling1" ? stirling_kind::degenerate_first
                                                    : stirling_kind::degenerate_second,
                      lam);
    } else if (req.family == "bell") {
        for (int n = 0; n <= req.n_max; ++n) rows.push_back(padded_coeffs(bell_poly(n), n + 1));
    } else if (req.family == "deg-bell") {
        const rational lam = require_lambda(req);
        params["lambda"] = to_string(lam);
        for (int n = 0; n <= req.n_max; ++n)
            rows.push_back(padded_coeffs(bell_poly(n, lam), n + 1));
    } else if (req.family == "prob-deg-stirling2") {
        const rational lam = require_lambda(req);
        const distribution y = require_dist(req);
        params["dist"] = to_string(y);
        params["lambda"] = to_string(lam);
        const auto& values = detail::prob_deg_stirling_rows(y, lam, req.n_max);
        rows.assign(values.begin(), values.end());
    } else if (req.family == "prob-deg-bell") {
        const rational lam = require_lambda(req);
        const distribution y = require_dist(req);
        params["dist"] = to_string(y);
        params["lambda"] = to_string(lam);
        const auto polys = prob_deg_bell_all(y, lam, req.n_max);
        for (int n = 0; n <= req.n_max; ++n)
            rows.push_back(padded_coeffs(polys[static_cast<std::size_t>(n)], n + 1));
    } else if (req.family == "polybell") {
        const rational lam = require_lambda(req);
        const distribution y = require_dist(req);
        if (!req.k) throw std::invalid_argument("--k is required for family polybell");
        params["dist"] = to_string(y);
        params["lambda"] = to_string(lam);
        params["k"] = *req.k;
        const auto polys = bel_closed_all(y, lam, *req.k, req.n_max);
        for (int n = 0; n <= req.n_max; ++n)
            rows.push_back(padded_coeffs(polys[static_cast<std::size_t>(n)], n + 1));
    } else {
        throw std::invalid_argument("unknown --family: " + req.family);
    }

    std::ostringstream out;
    if (req.format == "json") {
        json doc;
        doc["family"] = req.family;
        doc["params"] = params;
        doc["rows"] = json::array();
        for (int n = 0; n <= req.n_max; ++n) {
            json row;
            row["n"] = n;
            row["coeffs"] = json::array();
            for (const auto& c : rows[static_cast<std::size_t>(n)]) row["coeffs"].push_back(to_string(c));
            doc["rows"].push_back(std::move(row));
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "n";
        for (int i = 0; i <= req.n_max; ++i) out << ",c" << i;
        out << "\n";
        for (int n = 0; n <= req.n_max; ++n) {
            out << n;
            const auto& row = rows[static_cast<std::size_t>(n)];
            for (int i = 0; i <= req.n_max; ++i) {
                const rational value = i < static_cast<int>(row.size()) ? row[static_cast<std::size_t>(i)]
                                                                        : rational(0);
                out << "," << csv_quote(to_string(value));
            }
            out << "\n";
        }
    }
    emit(resolve_output_path(req.output), out.str());
    return 0;
}

struct verify_request {
    std::string id;
    std::string grid_text;
    bool seed_grid = false;
    std::string output;
};

int run_verify(const verify_request& req) {
    const grid_overrides ov =
        req.seed_grid ? grid_overrides{} : parse_grid_overrides(req.grid_text);
    std::vector<identity_report> reports;
    if (req.id == "all") {
        reports = run_all(ov);
    } else {
        reports.push_back(verify_identity(req.id, ov));
    }
    std::ostringstream out;
    bool all_passed = true;
    for (const auto& rep : reports) {
        all_passed = all_passed && rep.passed;
        out << rep.to_json().dump() << "\n";
    }
    emit(resolve_output_path(req.output), out.str());
    return all_passed ? 0 : 1;
}

struct series_request {
    std::string name;
    int order = 0;
    std::string x_text = "1";
    std::string lambda_text;
    std::string dist_text;
    std::optional<int> k;
    std::string format = "json";
    std::string output;
};

int run_series(const series_request& req) {
    const auto need_lambda = [&] {
        if (req.lambda_text.empty())
            throw std::invalid_argument("--lambda is required for series " + req.name);
        return parse_rational(req.lambda_text);
    };

    json params = json::object();
    params["order"] = req.order;
    std::optional<series> s;
    if (req.name == "deg-exp") {
        const rational lam = need_lambda();
        params["lambda"] = to_string(lam);
        if (req.x_text == "x") {
            params["x"] = "x";
            s = deg_exp_series(polynomial::x(), lam, req.order);
        } else {
            const rational x = parse_rational(req.x_text);
            params["x"] = to_string(x);
            s = deg_exp_series(x, lam, req.order);
        }
    } else if (req.name == "deg-log") {
        const rational lam = need_lambda();
        params["lambda"] = to_string(lam);
        s = deg_log_series(lam, req.order);
    } else if (req.name == "deg-mgf") {
        const rational lam = need_lambda();
        if (req.dist_text.empty())
            throw std::invalid_argument("--dist is required for series deg-mgf");
        const distribution y = parse_distribution(req.dist_text);
        params["dist"] = to_string(y);
        params["lambda"] = to_string(lam);
        s = deg_mgf_series(y, lam, req.order);
    } else if (req.name == "polyexp") {
        const rational lam = need_lambda();
        if (!req.k) throw std::invalid_argument("--k is required for series polyexp");
        params["lambda"] = to_string(lam);
        params["k"] = *req.k;
        s = polyexp_apply(*req.k, lam, series::t(req.order));
    } else {
        throw std::invalid_argument("unknown --name: " + req.name);
    }

    std::ostringstream out;
    if (req.format == "json") {
        json doc;
        doc["series"] = req.name;
        doc["params"] = params;
        doc["coeffs"] = json::array();
        for (int n = 0; n <= req.order; ++n) {
            const polynomial c = s->egf_coeff(n);
            if (c.is_constant()) {
                doc["coeffs"].push_back(to_string(c.constant_value()));
            } else {
                json arr = json::array();
                for (const auto& v : c.coeffs()) arr.push_back(to_string(v));
                doc["coeffs"].push_back(std::move(arr));
            }
        }
        out << doc.dump(2) << "\n";
    } else {
        out << "n,c\n";
        for (int n = 0; n <= req.order; ++n) {
            const polynomial c = s->egf_coeff(n);
            std::string cell;
            if (c.is_constant()) {
                cell = to_string(c.constant_value());
            } else {
                for (std::size_t i = 0; i < c.coeffs().size(); ++i) {
                    if (i) cell += ";";
                    cell += to_string(c.coeffs()[i]);
                }
            }
            out << n << "," << csv_quote(cell) << "\n";
        }
    }
    emit(resolve_output_path(req.output), out.str());
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact-arithmetic tables, series and identity checks for degenerate "
                 "Stirling/Bell/poly-Bell families associated with a random variable"};
    app.require_subcommand(1);

    table_request table_req;
    CLI::App* table_cmd = app.add_subcommand("table", "emit a coefficient table for a family");
    table_cmd->add_option("--family", table_req.family,
                          "one of: stirling1, stirling2, deg-stirling1, deg-stirling2, lah, "
                          "bell, deg-bell, prob-deg-stirling2, prob-deg-bell, polybell")
        ->required();
    table_cmd->add_option("--n-max", table_req.n_max, "largest row index")
        ->required()
        ->check(CLI::NonNegativeNumber);
    table_cmd->add_option("--lambda", table_req.lambda_text, "degeneracy parameter, rational");
    table_cmd->add_option("--dist", table_req.dist_text,
                          "distribution, e.g. point:1, bernoulli:2/5, poisson:3/2, gamma:1,1, "
                          "discrete:1:1/2,2:1/2");
    int table_k = 0;
    CLI::Option* table_k_opt = table_cmd->add_option("--k", table_k, "polyexponential index");
    table_cmd->add_option("--format", table_req.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    table_cmd->add_option("--output", table_req.output, "output file (default stdout)");

    verify_request verify_req;
    CLI::App* verify_cmd = app.add_subcommand("verify", "check identities by exact evaluation");
    verify_cmd->add_option("--id", verify_req.id, "identity id or \"all\"")->required();
    CLI::Option* grid_opt = verify_cmd->add_option(
        "--grid", verify_req.grid_text,
        "grid overrides, e.g. \"n<=6;l<=10;lambda=0,1/3;k=1,2;p=2/5;alpha=1;dist=point:1|gamma:1,1\"");
    verify_cmd->add_flag("--seed-grid", verify_req.seed_grid,
                         "use exactly the built-in acceptance grid")
        ->excludes(grid_opt);
    verify_cmd->add_option("--output", verify_req.output, "output file (default stdout)");

    series_request series_req;
    CLI::App* series_cmd = app.add_subcommand("series", "dump EGF coefficients n! [t^n]");
    series_cmd->add_option("--name", series_req.name, "one of: deg-exp, deg-log, deg-mgf, polyexp")
        ->required();
    series_cmd->add_option("--order", series_req.order, "truncation order")
        ->required()
        ->check(CLI::NonNegativeNumber);
    series_cmd->add_option("--x", series_req.x_text, "evaluation point (rational, or \"x\")");
    series_cmd->add_option("--lambda", series_req.lambda_text, "degeneracy parameter, rational");
    series_cmd->add_option("--dist", series_req.dist_text, "distribution (deg-mgf)");
    int series_k = 0;
    CLI::Option* series_k_opt = series_cmd->add_option("--k", series_k, "polyexponential index");
    series_cmd->add_option("--format", series_req.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    series_cmd->add_option("--output", series_req.output, "output file (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (table_cmd->parsed()) {
            if (table_k_opt->count() > 0) table_req.k = table_k;
            return run_table(table_req);
        }
        if (verify_cmd->parsed()) return run_verify(verify_req);
        if (series_cmd->parsed()) {
            if (series_k_opt->count() > 0) series_req.k = series_k;
            return run_series(series_req);
        }
    } catch (const unknown_identity& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
