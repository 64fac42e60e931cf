#include "dyscert/serialize.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

namespace dyscert {

std::string format_number(double x)
{
    return fmt::format("{:.17g}", x);
}

namespace {

bool is_scalar(const Json& j)
{
    return !j.is_array() && !j.is_object();
}

void emit(const Json& j, int depth, std::string& out)
{
    const std::string pad(2 * (depth + 1), ' ');
    const std::string close(2 * depth, ' ');
    switch (j.type()) {
    case Json::value_t::null:
        out += "null";
        return;
    case Json::value_t::boolean:
        out += j.get<bool>() ? "true" : "false";
        return;
    case Json::value_t::number_integer:
        out += std::to_string(j.get<std::int64_t>());
        return;
    case Json::value_t::number_unsigned:
        out += std::to_string(j.get<std::uint64_t>());
        return;
    case Json::value_t::number_float: {
        const double x = j.get<double>();
        if (!std::isfinite(x)) {
            throw std::logic_error("non-finite number in JSON output");
        }
        out += format_number(x);
        return;
    }
    case Json::value_t::string:
        out += j.dump();
        return;
    case Json::value_t::array: {
        if (j.empty()) {
            out += "[]";
            return;
        }
        const bool flat = std::all_of(j.begin(), j.end(), is_scalar);
        out += flat ? "[" : "[\n";
        bool first = true;
        for (const auto& item : j) {
            if (!first) {
                out += flat ? ", " : ",\n";
            }
            first = false;
            if (!flat) {
                out += pad;
            }
            emit(item, depth + 1, out);
        }
        out += flat ? "]" : "\n" + close + "]";
        return;
    }
    case Json::value_t::object: {
        if (j.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, value] : j.items()) {
            if (!first) {
                out += ",\n";
            }
            first = false;
            out += pad + Json(key).dump() + ": ";
            emit(value, depth + 1, out);
        }
        out += "\n" + close + "}";
        return;
    }
    default:
        throw std::logic_error("unsupported JSON value type");
    }
}

std::string csv_field(const CsvCell& cell)
{
    if (std::holds_alternative<std::monostate>(cell)) {
        return {};
    }
    if (const double* x = std::get_if<double>(&cell)) {
        return format_number(*x);
    }
    const auto& s = std::get<std::string>(cell);
    if (s.find_first_of(",\"\n\r") == std::string::npos) {
        return s;
    }
    std::string quoted = "\"";
    for (char c : s) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    return quoted + "\"";
}

CsvCell parse_field(const std::string& text, bool quoted)
{
    if (quoted) {
        return text;
    }
    if (text.empty()) {
        return std::monostate{};
    }
    double x = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, x);
    if (ec == std::errc() && ptr == end) {
        return x;
    }
    return text;
}

Json optional_number(const std::optional<double>& x)
{
    return x ? Json(*x) : Json(nullptr);
}

Json optional_flag(const std::optional<bool>& x)
{
    return x ? Json(*x) : Json(nullptr);
}

CsvCell optional_cell(const std::optional<double>& x)
{
    return x ? CsvCell(*x) : CsvCell(std::monostate{});
}

Json smoothness_json(const Smoothness& L)
{
    return L.is_finite() ? Json(L.value()) : Json("inf");
}

}  // namespace

std::string dump_json(const Json& doc)
{
    std::string out;
    emit(doc, 0, out);
    out += '\n';
    return out;
}

std::string write_csv(const CsvTable& table)
{
    std::string out;
    auto line = [&out](const auto& cells, auto&& field) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0) {
                out += ',';
            }
            out += field(cells[i]);
        }
        out += '\n';
    };
    line(table.header,
         [](const std::string& s) { return csv_field(CsvCell(s)); });
    for (const auto& row : table.rows) {
        line(row, csv_field);
    }
    return out;
}

CsvTable read_csv(std::string_view text)
{
    std::vector<std::vector<CsvCell>> records;
    std::vector<CsvCell> record;
    std::string field;
    bool quoted = false;
    bool in_quotes = false;
    bool pending = false;

    auto end_field = [&] {
        record.push_back(parse_field(field, quoted));
        field.clear();
        quoted = false;
    };
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                }
                else {
                    in_quotes = false;
                }
            }
            else {
                field += c;
            }
            continue;
        }
        pending = true;
        if (c == '"' && field.empty()) {
            in_quotes = quoted = true;
        }
        else if (c == ',') {
            end_field();
        }
        else if (c == '\n') {
            end_field();
            records.push_back(std::move(record));
            record.clear();
            pending = false;
        }
        else if (c != '\r') {
            field += c;
        }
    }
    if (in_quotes) {
        throw DomainError("unterminated quoted CSV field");
    }
    if (pending) {
        end_field();
        records.push_back(std::move(record));
    }

    CsvTable table;
    if (records.empty()) {
        return table;
    }
    for (const auto& cell : records.front()) {
        if (const auto* s = std::get_if<std::string>(&cell)) {
            table.header.push_back(*s);
        }
        else if (const double* x = std::get_if<double>(&cell)) {
            table.header.push_back(format_number(*x));
        }
        else {
            table.header.emplace_back();
        }
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header.size()) {
            throw DomainError(fmt::format("CSV row {} has {} fields, expected {}",
                                          r + 1, records[r].size(),
                                          table.header.size()));
        }
        table.rows.push_back(std::move(records[r]));
    }
    return table;
}

Json params_json(const FunctionClass& f, const FunctionClass& g,
                 const FunctionClass& h, const AlgoParams& params)
{
    Json j;
    j["mu_f"] = f.mu();
    j["L_f"] = smoothness_json(f.L());
    j["mu_g"] = g.mu();
    j["L_g"] = smoothness_json(g.L());
    j["mu_h"] = h.mu();
    j["L_h"] = smoothness_json(h.L());
    j["alpha"] = params.alpha;
    j["lambda"] = params.lambda;
    return j;
}

CsvTable rates_csv(const std::vector<RateResult>& table)
{
    CsvTable out;
    out.header = {"name", "valid", "rho", "rho_sq", "C_f", "C_g", "R_f", "R_g",
                  "d", "theta", "nu_f", "nu_g", "xi", "r", "note"};
    for (const auto& row : table) {
        const auto& b = row.breakdown;
        std::vector<CsvCell> cells{std::string(to_string(row.name)),
                                   std::string(row.valid ? "true" : "false")};
        if (row.valid) {
            cells.emplace_back(row.rho());
            cells.emplace_back(row.rho_sq);
        }
        else {
            cells.emplace_back(std::monostate{});
            cells.emplace_back(std::monostate{});
        }
        for (const auto* field : {&b.C_f, &b.C_g, &b.R_f, &b.R_g, &b.d, &b.theta,
                                  &b.nu_f, &b.nu_g, &b.xi, &b.r}) {
            cells.push_back(optional_cell(*field));
        }
        cells.emplace_back(row.condition_note);
        out.rows.push_back(std::move(cells));
    }
    return out;
}

Json rates_json(const FunctionClass& f, const FunctionClass& g,
                const FunctionClass& h, const AlgoParams& params,
                const std::vector<RateResult>& table)
{
    Json rows = Json::array();
    for (const auto& row : table) {
        Json r;
        r["name"] = to_string(row.name);
        r["valid"] = row.valid;
        r["rho"] = row.valid ? Json(row.rho()) : Json(nullptr);
        r["rho_sq"] = row.valid ? Json(row.rho_sq) : Json(nullptr);
        r["note"] = row.condition_note;
        Json b = Json::object();
        const auto& br = row.breakdown;
        const std::pair<const char*, const std::optional<double>*> fields[] = {
            {"C_f", &br.C_f}, {"C_g", &br.C_g}, {"R_f", &br.R_f},
            {"R_g", &br.R_g}, {"d", &br.d},     {"theta", &br.theta},
            {"nu_f", &br.nu_f}, {"nu_g", &br.nu_g}, {"xi", &br.xi},
            {"r", &br.r}};
        for (const auto& [key, value] : fields) {
            if (*value) {
                b[key] = **value;
            }
        }
        r["breakdown"] = std::move(b);
        rows.push_back(std::move(r));
    }
    Json j;
    j["params"] = params_json(f, g, h, params);
    j["rates"] = std::move(rows);
    j["best_rho"] = optional_number(best_valid_rate(table));
    return j;
}

CsvTable cloud_csv(const std::vector<SymbolPoint>& cloud)
{
    CsvTable out;
    out.header = {"re", "im", "modulus", "phi_f", "phi_g", "phi_h"};
    out.rows.reserve(cloud.size());
    for (const auto& p : cloud) {
        out.rows.push_back({p.value.real(), p.value.imag(), p.modulus,
                            p.angles[0], p.angles[1], p.angles[2]});
    }
    return out;
}

Json cloud_json(const FunctionClass& f, const FunctionClass& g,
                const FunctionClass& h, const AlgoParams& params,
                const SupEstimate& estimate,
                const std::vector<SymbolPoint>& cloud)
{
    const auto& a = estimate.argmax;
    Json j;
    j["params"] = params_json(f, g, h, params);
    j["grid_n"] = estimate.grid_n;
    j["sup_modulus"] = estimate.sup_modulus;
    j["argmax"] = {{"re", a.value.real()},  {"im", a.value.imag()},
                   {"phi_f", a.angles[0]},  {"phi_g", a.angles[1]},
                   {"phi_h", a.angles[2]}};
    j["columns"] = {"re", "im", "modulus", "phi_f", "phi_g", "phi_h"};
    Json points = Json::array();
    for (const auto& p : cloud) {
        points.push_back({p.value.real(), p.value.imag(), p.modulus,
                          p.angles[0], p.angles[1], p.angles[2]});
    }
    j["points"] = std::move(points);
    return j;
}

Json figure1_json(const FunctionClass& f, const FunctionClass& g,
                  const FunctionClass& h, const AlgoParams& params,
                  const InstanceSummary& s)
{
    Json j;
    j["params"] = params_json(f, g, h, params);
    j["grid_n"] = s.estimate.grid_n;
    j["sup_modulus"] = s.estimate.sup_modulus;
    j["rho_f"] = optional_number(s.rho_f);
    j["rho_g"] = optional_number(s.rho_g);
    j["rho_theorem2"] = optional_number(s.rho_theorem2);
    j["rho_r_opt"] = optional_number(s.rho_r_opt);
    j["r_star"] = optional_number(s.r_star);
    j["margin_g"] = optional_number(s.margin_g);
    j["contact_rel"] = optional_number(s.contact_rel);
    j["checks"] = {{"gap_positive", optional_flag(s.gap_positive)},
                   {"below_rho_f", optional_flag(s.below_rho_f)},
                   {"below_theorem2", optional_flag(s.below_theorem2)},
                   {"contact_within_tolerance", optional_flag(s.contact_ok)}};
    j["tolerances"] = {{"soundness_slack", kSoundnessSlack},
                       {"contact_rel", kContactTolerance}};
    return j;
}

CsvTable iteration_csv(const IterationLog& log)
{
    CsvTable out;
    out.header = {"k", "residual", "pair_ratio"};
    for (std::size_t k = 0; k < log.residuals.size(); ++k) {
        out.rows.push_back({static_cast<double>(k), log.residuals[k],
                            log.pair_ratios[k]});
    }
    return out;
}

Json iteration_json(const DysInstance& inst, const IterationLog& log,
                    const IterationSummary& s)
{
    Json j;
    j["classes"] = params_json(inst.f.tightest_class(), inst.g.tightest_class(),
                               inst.h.tightest_class(), inst.params);
    j["dimension"] = static_cast<std::size_t>(inst.dim());
    j["steps"] = s.steps;
    j["final_residual"] = s.final_residual;
    j["max_pair_ratio"] = s.max_pair_ratio;
    j["best_rate"] = optional_number(s.best_rate);
    j["within_rate"] = optional_flag(s.within_rate);
    Json k = Json::array();
    for (std::size_t i = 0; i < log.residuals.size(); ++i) {
        k.push_back(i);
    }
    j["k"] = std::move(k);
    j["residual"] = log.residuals;
    j["pair_ratio"] = log.pair_ratios;
    return j;
}

CsvTable verify_csv(const VerifyReport& report)
{
    CsvTable out;
    out.header = {"property", "passed", "cases", "worst_margin", "witness"};
    for (const auto& p : report.properties) {
        out.rows.push_back({p.name, std::string(p.passed ? "true" : "false"),
                            static_cast<double>(p.cases), p.worst_margin + 0.0,
                            p.witness});
    }
    return out;
}

Json verify_json(const VerifyReport& report)
{
    Json props = Json::array();
    for (const auto& p : report.properties) {
        props.push_back({{"name", p.name},
                         {"passed", p.passed},
                         {"cases", p.cases},
                         {"worst_margin", p.worst_margin + 0.0},
                         {"witness", p.witness}});
    }
    Json j;
    j["seed"] = report.seed;
    j["all_passed"] = report.all_passed();
    j["properties"] = std::move(props);
    return j;
}

std::string render_srg_svg(const std::vector<SymbolPoint>& cloud,
                           const std::vector<SvgCircle>& circles,
                           std::string_view title)
{
    constexpr double kPoint = 0.008;
    std::string out;
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" "
           "height=\"640\" viewBox=\"-1.2 -1.2 2.4 2.4\">\n";
    out += fmt::format("<title>{}</title>\n", title);
    out += "<g transform=\"scale(1,-1)\">\n";
    out += "<line x1=\"-1.2\" y1=\"0\" x2=\"1.2\" y2=\"0\" stroke=\"#bbbbbb\" "
           "stroke-width=\"0.004\"/>\n";
    out += "<line x1=\"0\" y1=\"-1.2\" x2=\"0\" y2=\"1.2\" stroke=\"#bbbbbb\" "
           "stroke-width=\"0.004\"/>\n";
    for (const auto& p : cloud) {
        out += fmt::format(
            "<rect class=\"pt\" x=\"{:.6f}\" y=\"{:.6f}\" width=\"{}\" "
            "height=\"{}\" fill=\"#1f4e9c\" fill-opacity=\"0.35\"/>\n",
            p.value.real() - kPoint / 2, p.value.imag() - kPoint / 2, kPoint,
            kPoint);
    }
    for (const auto& c : circles) {
        out += fmt::format(
            "<circle class=\"rate\" cx=\"0\" cy=\"0\" r=\"{:.6f}\" fill=\"none\" "
            "stroke=\"{}\" stroke-width=\"0.006\"/>\n",
            c.radius, c.color);
    }
    out += "</g>\n";
    double y = -1.12;
    for (const auto& c : circles) {
        out += fmt::format(
            "<line x1=\"-1.15\" y1=\"{0:.3f}\" x2=\"-1.05\" y2=\"{0:.3f}\" "
            "stroke=\"{1}\" stroke-width=\"0.012\"/>\n",
            y, c.color);
        out += fmt::format(
            "<text x=\"-1.02\" y=\"{:.3f}\" font-size=\"0.05\" "
            "dominant-baseline=\"middle\">{} = {:.6f}</text>\n",
            y, c.label, c.radius);
        y += 0.07;
    }
    out += "</svg>\n";
    return out;
}

}  // namespace dyscert
