#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include <lorenz/lp.hpp>
#include <lorenz/submaj.hpp>

namespace lorenz::cli {

namespace {

using nlohmann::json;

struct usage_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct run_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string xnum(const core::xreal& v) {
    if (v.is_inf()) return "inf";
    if (v.is_neg_inf()) return "-inf";
    return num(v.value());
}

std::string json_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default:
            if (static_cast<unsigned char>(c) < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\u%04x", c);
                out += buf;
            } else {
                out += c;
            }
        }
    }
    return out;
}

std::string jstr(const std::string& s) { return "\"" + json_escape(s) + "\""; }

// Ordered key/value report rendered as a JSON object or as key,value CSV
// rows.  Values arrive pre-rendered; quote marks strings in the JSON form.
struct report {
    struct field {
        std::string key;
        std::string value;
        bool quote;
    };
    std::vector<field> fields;

    void add(const std::string& key, const std::string& value) {
        fields.push_back({key, value, true});
    }
    void add_raw(const std::string& key, const std::string& value) {
        fields.push_back({key, value, false});
    }
    void add_num(const std::string& key, double v) { add_raw(key, num(v)); }
    void add_bool(const std::string& key, bool v) { add_raw(key, v ? "true" : "false"); }

    std::string to_json() const {
        std::string out = "{";
        for (std::size_t k = 0; k < fields.size(); ++k) {
            if (k) out += ",";
            out += jstr(fields[k].key) + ":";
            out += fields[k].quote ? jstr(fields[k].value) : fields[k].value;
        }
        return out + "}\n";
    }

    std::string to_csv() const {
        std::string out;
        for (const auto& f : fields) out += f.key + "," + f.value + "\n";
        return out;
    }
};

// Tabular report: CSV with a header row, or a JSON array of objects wrapped
// in an outer object alongside scalar fields.
struct table {
    std::vector<std::string> header;
    std::vector<bool> quote;
    std::vector<std::vector<std::string>> rows;

    std::string to_csv() const {
        std::string out;
        for (std::size_t k = 0; k < header.size(); ++k)
            out += (k ? "," : "") + header[k];
        out += "\n";
        for (const auto& row : rows) {
            for (std::size_t k = 0; k < row.size(); ++k) out += (k ? "," : "") + row[k];
            out += "\n";
        }
        return out;
    }

    std::string rows_json() const {
        std::string out = "[";
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r) out += ",";
            out += "{";
            for (std::size_t k = 0; k < header.size(); ++k) {
                if (k) out += ",";
                out += jstr(header[k]) + ":";
                out += quote[k] ? jstr(rows[r][k]) : rows[r][k];
            }
            out += "}";
        }
        return out + "]";
    }
};

struct options {
    std::string command;
    std::map<std::string, std::string> values;

    bool has(const std::string& key) const { return values.count(key) != 0; }

    const std::string& need(const std::string& key) const {
        auto it = values.find(key);
        if (it == values.end())
            throw usage_error(command + ": missing required --" + key);
        return it->second;
    }

    double real(const std::string& key) const {
        const std::string& raw = need(key);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(raw, &used);
        } catch (const std::exception&) {
            throw usage_error("--" + key + ": not a number: " + raw);
        }
        if (used != raw.size()) throw usage_error("--" + key + ": not a number: " + raw);
        return v;
    }

    double real_or(const std::string& key, double fallback) const {
        return has(key) ? real(key) : fallback;
    }

    long integer(const std::string& key) const {
        double v = real(key);
        long n = static_cast<long>(v);
        if (static_cast<double>(n) != v)
            throw usage_error("--" + key + ": not an integer");
        return n;
    }

    long integer_or(const std::string& key, long fallback) const {
        return has(key) ? integer(key) : fallback;
    }
};

options parse_options(const std::vector<std::string>& args,
                      const std::set<std::string>& allowed) {
    options opt;
    opt.command = args[0];
    for (std::size_t k = 1; k < args.size(); ++k) {
        const std::string& tok = args[k];
        if (tok.size() < 3 || tok.rfind("--", 0) != 0)
            throw usage_error(opt.command + ": unexpected argument: " + tok);
        std::string key = tok.substr(2);
        if (!allowed.count(key))
            throw usage_error(opt.command + ": unknown flag --" + key);
        if (++k == args.size())
            throw usage_error(opt.command + ": --" + key + " needs a value");
        opt.values[key] = args[k];
    }
    return opt;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw run_error("cannot read " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::vector<double> grid_values(const options& opt) {
    if (opt.has("grid") == opt.has("z"))
        throw usage_error(opt.command + ": provide exactly one of --z or --grid");
    if (opt.has("z")) return {opt.real("z")};
    const std::string& spec = opt.need("grid");
    double start = 0.0, stop = 0.0;
    long count = 0;
    char extra = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%ld%c", &start, &stop, &count, &extra) != 3 ||
        count < 1)
        throw usage_error("--grid: expected start:stop:count, got " + spec);
    std::vector<double> zs;
    for (long k = 0; k < count; ++k) {
        double t = count == 1 ? 0.0 : static_cast<double>(k) / (count - 1);
        zs.push_back(start + t * (stop - start));
    }
    return zs;
}

std::vector<double> number_list(const json& doc, const std::string& key) {
    if (!doc.contains(key)) throw run_error("field '" + key + "': missing");
    const json& node = doc.at(key);
    if (!node.is_array() || node.empty())
        throw run_error("field '" + key + "': expected a nonempty list of reals");
    std::vector<double> out;
    for (const json& v : node) {
        if (!v.is_number())
            throw run_error("field '" + key + "': expected a nonempty list of reals");
        out.push_back(v.get<double>());
    }
    return out;
}

json parse_document(const std::string& text, const std::set<std::string>& allowed) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw run_error(std::string("document is not valid json: ") + e.what());
    }
    if (!doc.is_object()) throw run_error("document is not a json object");
    for (const auto& item : doc.items())
        if (!allowed.count(item.key()))
            throw run_error("field '" + item.key() + "': unknown");
    if (doc.contains("name") && !doc.at("name").is_string())
        throw run_error("field 'name': expected text");
    return doc;
}

thermo::resource load_resource(const options& opt, const std::string& key) {
    return parse_resource(read_file(opt.need(key)));
}

entangle::schmidt_vector load_schmidt(const options& opt, const std::string& key) {
    return parse_schmidt(read_file(opt.need(key)));
}

void emit(const options& opt, const std::string& text, std::ostream& out) {
    if (opt.has("out")) {
        std::ofstream file(opt.need("out"), std::ios::binary);
        if (!file) throw run_error("cannot write " + opt.need("out"));
        file << text;
    } else {
        out << text;
    }
}

std::string pick_format(const options& opt) {
    std::string format = opt.has("format") ? opt.need("format") : "json";
    if (format != "json" && format != "csv")
        throw usage_error("--format: expected json or csv");
    return format;
}

std::string witness_json(const submaj::witness& w) {
    std::string out = "[";
    for (std::size_t i = 0; i < w.m.size(); ++i) {
        if (i) out += ",";
        out += "[";
        for (std::size_t j = 0; j < w.m[i].size(); ++j)
            out += (j ? "," : "") + num(w.m[i][j]);
        out += "]";
    }
    return out + "]";
}

std::string witness_csv_row(const std::vector<double>& row) {
    std::string out;
    for (std::size_t j = 0; j < row.size(); ++j) out += (j ? ";" : "") + num(row[j]);
    return out;
}

int cmd_check(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    thermo::resource b = load_resource(opt, "b");
    core::vpair pa = thermo::as_pair(a), pb = thermo::as_pair(b);
    auto rel = submaj::relatively_majorizes(pa, pb);
    auto sub = submaj::submajorizes(pa, pb, submaj::method::lp);
    if (sub.yes != submaj::submajorizes(pa, pb, submaj::method::geometric).yes)
        throw run_error("internal: decision methods disagree");

    report rep;
    rep.add("a", a.label);
    rep.add("b", b.label);
    rep.add_bool("relatively_majorizes", rel.yes);
    rep.add_bool("submajorizes", sub.yes);
    const submaj::witness* w = nullptr;
    if (rel.transform) w = &*rel.transform;
    else if (sub.transform) w = &*sub.transform;
    if (w) {
        rep.add("witness_class",
                w->cls == submaj::witness::matrix_class::stochastic ? "stochastic"
                                                                    : "substochastic");
        if (pick_format(opt) == "json") rep.add_raw("witness", witness_json(*w));
        else
            for (std::size_t i = 0; i < w->m.size(); ++i)
                rep.add_raw("witness_" + std::to_string(i), witness_csv_row(w->m[i]));
    }
    emit(opt, pick_format(opt) == "json" ? rep.to_json() : rep.to_csv(), out);
    return 0;
}

int cmd_region(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    thermo::resource b = load_resource(opt, "b");
    auto boundary =
        submaj::region_boundary(thermo::as_pair(a), thermo::as_pair(b), grid_values(opt));

    table t;
    t.header = {"z", "lambda_star"};
    t.quote = {false, false};
    for (const auto& [z, lam] : boundary.samples) t.rows.push_back({num(z), num(lam)});
    if (pick_format(opt) == "csv") {
        emit(opt, t.to_csv(), out);
    } else {
        std::string body = "{" + jstr("a") + ":" + jstr(a.label) + "," + jstr("b") +
                           ":" + jstr(b.label) + "," + jstr("samples") + ":" +
                           t.rows_json() + "}\n";
        emit(opt, body, out);
    }
    return 0;
}

int cmd_work(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    double z = opt.real_or("z", 1.0);
    double lambda = opt.real_or("lambda", 1.0);

    report rep;
    rep.add("a", a.label);
    rep.add_num("z", z);
    rep.add_num("lambda", lambda);
    rep.add_num("phi", thermo::phi(a, z));
    rep.add_num("tangent_slope", thermo::lorenz_tangent_slope(a, z));
    if (z > 0.0 && z <= 1.0) {
        auto value = thermo::work_value(a, z, lambda);
        rep.add_num("value_z_star", value.z_star);
        rep.add_num("value_lambda_star", value.lambda_star);
        rep.add_num("value_eta_hat", value.eta_hat);
    }
    auto cost = thermo::work_cost(a, lambda, std::max(z, 1.0));
    rep.add_num("cost_z_star", cost.z_star);
    if (z >= 1.0) {
        rep.add_num("cost_eps_star", cost.eps_star);
        rep.add_num("cost_eta_star", cost.eta_star);
    }
    emit(opt, pick_format(opt) == "json" ? rep.to_json() : rep.to_csv(), out);
    return 0;
}

int cmd_approx(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    thermo::resource b = load_resource(opt, "b");
    double z = opt.real_or("z", 1.0);
    auto rep_data = thermo::transform(a, b, {z}, {1.0});

    report rep;
    rep.add("a", a.label);
    rep.add("b", b.label);
    rep.add_num("z", z);
    rep.add_num("lambda_star", rep_data.lambda_star_at_z[0].second);
    rep.add_num("eps_star", rep_data.eps_star_at_z[0].second);
    rep.add_num("eta_hat_star", rep_data.eta_hat_star_at_z[0].second);
    if (opt.has("beta")) {
        thermo::battery_context ctx{opt.real("beta"), opt.real_or("energy", 0.0),
                                    opt.real_or("partition", 1.0)};
        double scale = thermo::battery_scale(ctx);
        rep.add_num("battery_scale", scale);
        rep.add_num("eta_physical", scale * rep_data.eta_hat_star_at_z[0].second);
    }
    emit(opt, pick_format(opt) == "json" ? rep.to_json() : rep.to_csv(), out);
    return 0;
}

int cmd_bounds(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    thermo::resource b = load_resource(opt, "b");
    auto entries = thermo::bounds_report(a, b, opt.real_or("lambda", 1.0),
                                         opt.real_or("z", 1.0), opt.real_or("zprime", 1.0));
    table t;
    t.header = {"id", "lhs", "rhs", "satisfied", "skipped"};
    t.quote = {true, false, false, false, false};
    for (const auto& e : entries)
        t.rows.push_back({e.id, num(e.lhs), num(e.rhs), e.satisfied ? "true" : "false",
                          e.skipped ? "true" : "false"});
    if (pick_format(opt) == "csv") {
        emit(opt, t.to_csv(), out);
    } else {
        std::string body = "{" + jstr("a") + ":" + jstr(a.label) + "," + jstr("b") +
                           ":" + jstr(b.label) + "," + jstr("bounds") + ":" +
                           t.rows_json() + "}\n";
        emit(opt, body, out);
    }
    return 0;
}

int cmd_asympt(const options& opt, std::ostream& out) {
    thermo::resource a = load_resource(opt, "a");
    long nmax = opt.integer_or("nmax", 16);
    if (nmax < 1) throw usage_error("--nmax: must be at least 1");

    table t;
    t.header = {"n", "rate"};
    t.quote = {false, false};
    std::string kind, limit;
    std::string blabel;
    if (opt.has("b")) {
        thermo::resource b = load_resource(opt, "b");
        blabel = b.label;
        auto rates = thermo::asymptotic_work_rate(a, b, static_cast<int>(nmax));
        kind = "work";
        limit = num(rates.limit);
        for (const auto& [n, rate] : rates.rates)
            t.rows.push_back({std::to_string(n), num(rate)});
    } else {
        auto rates = thermo::erasure_cooling_rates(a, static_cast<int>(nmax));
        kind = "erasure";
        limit = xnum(rates.limit);
        for (const auto& [n, rate] : rates.rates)
            t.rows.push_back({std::to_string(n), xnum(rate)});
    }
    if (pick_format(opt) == "csv") {
        emit(opt, t.to_csv(), out);
    } else {
        std::string body = "{" + jstr("a") + ":" + jstr(a.label);
        if (opt.has("b")) body += "," + jstr("b") + ":" + jstr(blabel);
        body += "," + jstr("kind") + ":" + jstr(kind);
        body += "," + jstr("limit") + ":" + jstr(limit);
        body += "," + jstr("rates") + ":" + t.rows_json() + "}\n";
        emit(opt, body, out);
    }
    return 0;
}

int cmd_entangle(const options& opt, std::ostream& out) {
    entangle::schmidt_vector a = load_schmidt(opt, "a");
    entangle::schmidt_vector b = load_schmidt(opt, "b");
    double z = opt.real_or("z", 1.0);
    auto fid = entangle::fidelity_bounds(a, b, z);

    report rep;
    rep.add_bool("locc_possible", entangle::locc_possible(a, b));
    rep.add_num("vidal_probability", entangle::vidal_probability(a, b));
    rep.add_num("entanglement_cost", entangle::entanglement_cost(a, b));
    rep.add_num("z", z);
    rep.add_num("shift_bound", fid.shift_bound);
    if (fid.entropy_bound) rep.add_num("entropy_bound", *fid.entropy_bound);
    if (fid.cost_bound) rep.add_num("cost_bound", *fid.cost_bound);
    rep.add_num("bhattacharyya", fid.bhattacharyya);
    emit(opt, pick_format(opt) == "json" ? rep.to_json() : rep.to_csv(), out);
    return 0;
}

int cmd_lorenz(const options& opt, std::ostream& out) {
    std::vector<std::pair<std::string, core::vpair>> curves;
    thermo::resource a = load_resource(opt, "a");
    curves.emplace_back(a.label.empty() ? "a" : a.label, thermo::as_pair(a));
    if (opt.has("b")) {
        thermo::resource b = load_resource(opt, "b");
        curves.emplace_back(b.label.empty() ? "b" : b.label, thermo::as_pair(b));
    }
    emit(opt, render_lorenz(curves), out);
    return 0;
}

core::vpair random_pair(std::mt19937_64& rng, int max_len) {
    std::uniform_int_distribution<int> len(2, max_len);
    std::uniform_real_distribution<double> mass(0.0, 1.0);
    int n = len(rng);
    core::vpair a;
    for (int k = 0; k < n; ++k) {
        double p = mass(rng), q = mass(rng);
        if (mass(rng) < 0.25) p = 0.0;
        if (mass(rng) < 0.25) q = 0.0;
        a.p.push_back(p);
        a.q.push_back(q);
    }
    if (core::total(a.p) == 0.0) a.p[0] = 0.4;
    if (core::total(a.q) == 0.0) a.q[0] = 0.4;
    return a;
}

int cmd_verify(const options& opt, std::ostream& out) {
    unsigned long long seed = static_cast<unsigned long long>(opt.integer_or("seed", 7));
    long cases = opt.integer_or("cases", 200);
    if (cases < 1) throw usage_error("--cases: must be at least 1");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    long decisions_ok = 0, feasible = 0, dilations_ok = 0;
    long approx_ok = 0, errors_ok = 0;
    bool failed = false;

    for (long it = 0; it < cases; ++it) {
        core::vpair a = random_pair(rng, 6);
        core::vpair b = random_pair(rng, 6);
        if (unit(rng) < 0.4) {
            b = a;
            for (auto& v : b.p) v *= 0.5 + 0.5 * unit(rng);
            for (auto& v : b.q) v *= 1.0 + unit(rng);
        }
        auto geo = submaj::submajorizes(a, b, submaj::method::geometric);
        auto lpd = submaj::submajorizes(a, b, submaj::method::lp);
        bool ok = geo.yes == lpd.yes;
        if (lpd.yes && !submaj::witness_valid(*lpd.transform, a, b)) ok = false;
        if (geo.yes) {
            ++feasible;
            auto dil = submaj::dilate(a, b);
            if (submaj::relatively_majorizes(dil.a_tilde, dil.b_tilde).yes &&
                submaj::witness_valid(dil.transform, dil.a_tilde, dil.b_tilde))
                ++dilations_ok;
        }
        decisions_ok += ok;

        submaj::approx_params params{0.5 * unit(rng), 0.5 * unit(rng)};
        approx_ok += submaj::approx_submajorizes(a, b, params, submaj::method::geometric)
                         .yes ==
                     submaj::approx_submajorizes(a, b, params, submaj::method::lp).yes;

        auto formula = submaj::optimal_errors(a, b);
        auto via_lp = submaj::optimal_errors_lp(a, b);
        bool err_ok = std::abs(formula.eps_star - via_lp.eps_star) <= 1e-7 &&
                      formula.eta_hat_star.is_inf() == via_lp.eta_hat_star.is_inf();
        if (err_ok && formula.eta_hat_star.finite())
            err_ok = std::abs(formula.eta_hat_star.value() -
                              via_lp.eta_hat_star.value()) <= 1e-7;
        errors_ok += err_ok;
    }

    out << "submajorize decisions: " << decisions_ok << "/" << cases << "\n";
    out << "dilations verified: " << dilations_ok << "/" << feasible << "\n";
    out << "approx decisions: " << approx_ok << "/" << cases << "\n";
    out << "error optima: " << errors_ok << "/" << cases << "\n";
    out << "verified optimal solves: " << lp::verified_optimal_solves.load() << "\n";
    failed = decisions_ok != cases || dilations_ok != feasible || approx_ok != cases ||
             errors_ok != cases;
    out << (failed ? "FAILED\n" : "all checks passed\n");
    return failed ? 1 : 0;
}

const char* usage_text =
    "usage: lorenz <command> [flags]\n"
    "commands:\n"
    "  check    --a FILE --b FILE [--format json|csv] [--out FILE]\n"
    "  region   --a FILE --b FILE (--z Z | --grid START:STOP:COUNT) [--format ...]\n"
    "  work     --a FILE [--z Z] [--lambda L] [--format ...] [--out FILE]\n"
    "  approx   --a FILE --b FILE [--z Z] [--beta B [--energy E] [--partition ZB]]\n"
    "  bounds   --a FILE --b FILE [--lambda L] [--z Z] [--zprime Z2] [--format ...]\n"
    "  asympt   --a FILE [--b FILE] [--nmax N] [--format ...] [--out FILE]\n"
    "  entangle --a FILE --b FILE [--z Z] [--format ...] [--out FILE]\n"
    "  lorenz   --a FILE [--b FILE] [--out FILE]\n"
    "  verify   [--seed S] [--cases N]\n";

} // namespace

thermo::resource parse_resource(const std::string& text) {
    json doc = parse_document(text, {"name", "p", "q", "energies", "beta", "population"});
    bool direct = doc.contains("p") || doc.contains("q");
    bool derived =
        doc.contains("energies") || doc.contains("beta") || doc.contains("population");
    if (direct == derived)
        throw run_error("resource document: provide either p and q, or energies, beta "
                        "and population");

    thermo::resource out;
    out.label = doc.value("name", "");
    if (direct) {
        out.r = number_list(doc, "p");
        out.g = number_list(doc, "q");
    } else {
        std::vector<double> energies = number_list(doc, "energies");
        if (!doc.contains("beta") || !doc.at("beta").is_number())
            throw run_error("field 'beta': expected a real");
        double beta = doc.at("beta").get<double>();
        if (!(beta > 0.0)) throw run_error("field 'beta': must be positive");
        out.r = number_list(doc, "population");
        out.g = thermo::gibbs(energies, beta);
    }
    try {
        thermo::check_resource(out);
    } catch (const std::invalid_argument& e) {
        throw run_error("resource '" + out.label + "': " + e.what());
    }
    return out;
}

std::string serialize_resource(const thermo::resource& a) {
    std::string out = "{" + jstr("name") + ":" + jstr(a.label) + "," + jstr("p") + ":[";
    for (std::size_t k = 0; k < a.r.size(); ++k) out += (k ? "," : "") + num17(a.r[k]);
    out += "]," + jstr("q") + ":[";
    for (std::size_t k = 0; k < a.g.size(); ++k) out += (k ? "," : "") + num17(a.g[k]);
    return out + "]}\n";
}

entangle::schmidt_vector parse_schmidt(const std::string& text) {
    json doc = parse_document(text, {"name", "p", "q"});
    entangle::schmidt_vector out{number_list(doc, "p")};
    try {
        entangle::check_schmidt(out);
    } catch (const std::invalid_argument& e) {
        throw run_error("schmidt document: " + std::string(e.what()));
    }
    return out;
}

std::string render_lorenz(
    const std::vector<std::pair<std::string, core::vpair>>& curves) {
    if (curves.empty()) throw std::invalid_argument("render_lorenz: no curves");
    static const char* palette[4] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    double max_p = 0.0, max_q = 0.0;
    for (const auto& [label, pair] : curves) {
        core::check_pair(pair);
        max_p = std::max(max_p, core::total(pair.p));
        max_q = std::max(max_q, core::total(pair.q));
    }
    max_p = std::max(max_p, 1e-12);
    max_q = std::max(max_q, 1e-12);
    auto sx = [&](double q) { return num(1000.0 * q / max_q); };
    auto sy = [&](double p) { return num(1000.0 - 1000.0 * p / max_p); };

    std::string svg =
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n"
        "<line x1=\"0\" y1=\"1000\" x2=\"1000\" y2=\"1000\" stroke=\"#444\" "
        "stroke-width=\"2\"/>\n"
        "<line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"1000\" stroke=\"#444\" "
        "stroke-width=\"2\"/>\n";
    for (std::size_t c = 0; c < curves.size(); ++c) {
        const auto& [label, pair] = curves[c];
        auto curve = core::elbows(pair);
        const char* color = palette[c % 4];
        std::string points = sx(0.0) + "," + sy(0.0);
        for (const auto& pt : curve.points)
            points += " " + sx(pt.y) + "," + sy(pt.x);
        svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) +
               "\" stroke-width=\"3\" points=\"" + points + "\"/>\n";
        for (const auto& pt : curve.points)
            svg += "<circle cx=\"" + sx(pt.y) + "\" cy=\"" + sy(pt.x) +
                   "\" r=\"7\" fill=\"" + color + "\"/>\n";
        svg += "<text x=\"20\" y=\"" + num(40.0 + 40.0 * static_cast<double>(c)) +
               "\" font-size=\"32\" fill=\"" + color + "\">" + json_escape(label) +
               "</text>\n";
    }
    return svg + "</svg>\n";
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty()) {
        err << usage_text;
        return 2;
    }
    const std::string& command = args[0];
    if (command == "help" || command == "--help") {
        out << usage_text;
        return 0;
    }
    try {
        if (command == "check")
            return cmd_check(
                parse_options(args, {"a", "b", "format", "out"}), out);
        if (command == "region")
            return cmd_region(
                parse_options(args, {"a", "b", "z", "grid", "format", "out"}), out);
        if (command == "work")
            return cmd_work(
                parse_options(args, {"a", "z", "lambda", "format", "out"}), out);
        if (command == "approx")
            return cmd_approx(parse_options(args, {"a", "b", "z", "beta", "energy",
                                                   "partition", "format", "out"}),
                              out);
        if (command == "bounds")
            return cmd_bounds(
                parse_options(args, {"a", "b", "lambda", "z", "zprime", "format", "out"}),
                out);
        if (command == "asympt")
            return cmd_asympt(
                parse_options(args, {"a", "b", "nmax", "format", "out"}), out);
        if (command == "entangle")
            return cmd_entangle(
                parse_options(args, {"a", "b", "z", "format", "out"}), out);
        if (command == "lorenz")
            return cmd_lorenz(parse_options(args, {"a", "b", "out"}), out);
        if (command == "verify")
            return cmd_verify(parse_options(args, {"seed", "cases"}), out);
        throw usage_error("unknown command: " + command);
    } catch (const usage_error& e) {
        err << "usage error: " << e.what() << "\n";
        err << usage_text;
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

} // namespace lorenz::cli
