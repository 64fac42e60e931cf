#include "dyscert/cli.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include <fmt/format.h>

#include "CLI11.hpp"

#include "dyscert/rates.hpp"
#include "dyscert/serialize.hpp"
#include "dyscert/summary.hpp"
#include "dyscert/verify.hpp"

namespace dyscert::cli {

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string_view> split_ws(std::string_view line)
{
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
        }
        if (i > start) {
            out.push_back(line.substr(start, i - start));
        }
    }
    return out;
}

struct Classes {
    FunctionClass f, g, h;
    AlgoParams params;
};

Classes classes_of(const RunConfig& cfg)
{
    return {FunctionClass::checked(cfg.mu_f, cfg.L_f, "f"),
            FunctionClass::checked(cfg.mu_g, cfg.L_g, "g"),
            FunctionClass::checked(cfg.mu_h, cfg.L_h, "h"),
            AlgoParams(cfg.alpha, cfg.lambda)};
}

void write_text(const std::string& text, std::ostream& out,
                const std::optional<std::string>& path)
{
    if (!path) {
        out << text;
        return;
    }
    std::ofstream file(*path, std::ios::binary);
    if (!file) {
        throw DomainError(fmt::format("cannot open '{}' for writing", *path));
    }
    file << text;
}

// Data goes to stdout unless --out is set, so the human summary moves to
// stderr in that case.
std::ostream& summary_stream(const RunConfig& cfg, std::ostream& out,
                             std::ostream& err)
{
    return cfg.output_path ? out : err;
}

std::string fmt_opt(const std::optional<double>& x)
{
    return x ? format_number(*x) : "n/a";
}

std::vector<SvgCircle> rate_circles(const InstanceSummary& s)
{
    std::vector<SvgCircle> out;
    const std::tuple<const char*, const std::optional<double>*, const char*> rows[] = {
        {"rho_f", &s.rho_f, "#d62728"},
        {"rho_g", &s.rho_g, "#2ca02c"},
        {"theorem2_rho", &s.rho_theorem2, "#9467bd"},
        {"rho(r*)", &s.rho_r_opt, "#ff7f0e"}};
    for (const auto& [label, value, color] : rows) {
        if (*value) {
            out.push_back({label, **value, color});
        }
    }
    return out;
}

std::string render_cloud(const Classes& c, Format format, std::size_t grid_n,
                         const std::string& title)
{
    const auto summary = summarize_instance(c.f, c.g, c.h, c.params, grid_n);
    const auto cloud = export_symbol_cloud(c.f, c.g, c.h, c.params, grid_n);
    switch (format) {
    case Format::csv:
        return write_csv(cloud_csv(cloud));
    case Format::json:
        return dump_json(cloud_json(c.f, c.g, c.h, c.params, summary.estimate, cloud));
    case Format::svg:
        return render_srg_svg(cloud, rate_circles(summary), title);
    }
    return {};
}

int cmd_rates(const RunConfig& cfg, std::ostream& out)
{
    const auto c = classes_of(cfg);
    const auto table = compare_all(c.f, c.g, c.h, c.params);
    const auto format = cfg.format.value_or(Format::csv);
    if (format == Format::svg) {
        throw UsageError("rates: --format must be csv or json");
    }
    write_text(format == Format::json
                   ? dump_json(rates_json(c.f, c.g, c.h, c.params, table))
                   : write_csv(rates_csv(table)),
               out, cfg.output_path);
    return kExitOk;
}

int cmd_srg(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto c = classes_of(cfg);
    const std::size_t grid_n = cfg.grid_n.value_or(kSrgDefaultGridN);
    const auto est = estimate_sup_modulus(c.f, c.g, c.h, c.params, grid_n);
    write_text(render_cloud(c, cfg.format.value_or(Format::csv), grid_n,
                            "DYS symbol over the SRG boundaries"),
               out, cfg.output_path);
    const auto& a = est.argmax;
    summary_stream(cfg, out, err)
        << fmt::format("sup_modulus={} grid_n={} argmax_phi=({}, {}, {})\n",
                       format_number(est.sup_modulus), grid_n,
                       format_number(a.angles[0]), format_number(a.angles[1]),
                       format_number(a.angles[2]));
    return kExitOk;
}

int cmd_figure1(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const auto c = classes_of(cfg);
    const std::size_t grid_n = cfg.grid_n.value_or(kDefaultGridN);
    const auto start = std::chrono::steady_clock::now();
    const auto s = summarize_instance(c.f, c.g, c.h, c.params, grid_n);
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    write_text(dump_json(figure1_json(c.f, c.g, c.h, c.params, s)), out,
               cfg.output_path);
    if (cfg.cloud_path) {
        write_text(render_cloud(c, cfg.format.value_or(Format::svg),
                                cfg.plot_grid_n, "reference instance"),
                   out, cfg.cloud_path);
    }
    summary_stream(cfg, out, err) << fmt::format(
        "sup={} rho_f={} rho_g={} rho_theorem2={} rho_r_opt={} margin_g={} "
        "contact_rel={} elapsed_s={:.2f}\n",
        format_number(s.estimate.sup_modulus), fmt_opt(s.rho_f), fmt_opt(s.rho_g),
        fmt_opt(s.rho_theorem2), fmt_opt(s.rho_r_opt), fmt_opt(s.margin_g),
        fmt_opt(s.contact_rel), elapsed);
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out)
{
    VerifyConfig vc;
    vc.seed = cfg.seed;
    vc.grid_n = cfg.grid_n.value_or(kDefaultGridN);
    if (cfg.sets) {
        vc.soundness_sets = *cfg.sets;
    }
    const auto report = run_verification(vc);
    std::string text;
    if (!cfg.format) {
        text = format_report(report);
    }
    else if (*cfg.format == Format::csv) {
        text = write_csv(verify_csv(report));
    }
    else if (*cfg.format == Format::json) {
        text = dump_json(verify_json(report));
    }
    else {
        throw UsageError("verify: --format must be csv or json");
    }
    write_text(text, out, cfg.output_path);
    return report.all_passed() ? kExitOk : kExitFailure;
}

int cmd_iterate(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    const AlgoParams params(cfg.alpha, cfg.lambda);
    std::string text;
    if (cfg.instance_path) {
        if (!cfg.rows.empty()) {
            throw UsageError("iterate: use either --instance or --row, not both");
        }
        std::ifstream file(*cfg.instance_path, std::ios::binary);
        if (!file) {
            throw DomainError(fmt::format("cannot open '{}'", *cfg.instance_path));
        }
        std::ostringstream buf;
        buf << file.rdbuf();
        text = buf.str();
    }
    else if (!cfg.rows.empty()) {
        for (const auto& r : cfg.rows) {
            text += r + "\n";
        }
    }
    else {
        throw UsageError("iterate: an instance is required (--instance FILE or --row)");
    }
    const auto inst = parse_instance(text, params);
    const Vector z0 = Vector::Ones(inst.dim());
    const auto log = run_iteration(inst, z0, companion_start(z0, cfg.seed),
                                   cfg.iters, cfg.tol);
    const auto s = summarize_iteration(inst, log);
    const auto format = cfg.format.value_or(Format::csv);
    if (format == Format::svg) {
        throw UsageError("iterate: --format must be csv or json");
    }
    write_text(format == Format::json ? dump_json(iteration_json(inst, log, s))
                                      : write_csv(iteration_csv(log)),
               out, cfg.output_path);
    summary_stream(cfg, out, err) << fmt::format(
        "steps={} final_residual={} max_pair_ratio={} best_rate={}\n", s.steps,
        format_number(s.final_residual), format_number(s.max_pair_ratio),
        fmt_opt(s.best_rate));
    return kExitOk;
}

}  // namespace

DysInstance parse_instance(std::string_view text, const AlgoParams& params)
{
    std::vector<std::array<double, 6>> rows;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t nl = std::min(text.find('\n', pos), text.size());
        const auto line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        const auto tokens = split_ws(line);
        if (tokens.empty() || tokens.front().front() == '#') {
            continue;
        }
        if (tokens.size() != 6) {
            throw DomainError(fmt::format(
                "line {}: expected 6 values (c_f c_g c_h b_f b_g b_h), got {}",
                line_no, tokens.size()));
        }
        std::array<double, 6> row{};
        for (std::size_t i = 0; i < 6; ++i) {
            const auto tok = tokens[i];
            const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), row[i]);
            if (ec != std::errc() || ptr != tok.data() + tok.size() || !std::isfinite(row[i])) {
                throw DomainError(fmt::format("line {}: cannot parse '{}'", line_no, tok));
            }
        }
        static constexpr const char* kNames[] = {"c_f", "c_g", "c_h"};
        for (std::size_t i = 0; i < 3; ++i) {
            if (row[i] < 0.0) {
                throw DomainError(fmt::format("line {}: {} must be >= 0, got {}",
                                              line_no, kNames[i], row[i]));
            }
        }
        rows.push_back(row);
    }
    if (rows.empty()) {
        throw DomainError("instance has no rows");
    }
    const auto n = static_cast<Eigen::Index>(rows.size());
    auto column = [&](std::size_t j) {
        Vector v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            v[i] = rows[static_cast<std::size_t>(i)][j];
        }
        return v;
    };
    return DysInstance(QuadraticSpec(column(0), column(3)),
                       QuadraticSpec(column(1), column(4)),
                       QuadraticSpec(column(2), column(5)), params);
}

int execute(const RunConfig& cfg, std::ostream& out, std::ostream& err)
{
    try {
        switch (cfg.command) {
        case Command::rates:
            return cmd_rates(cfg, out);
        case Command::srg:
            return cmd_srg(cfg, out, err);
        case Command::figure1:
            return cmd_figure1(cfg, out, err);
        case Command::verify:
            return cmd_verify(cfg, out);
        case Command::iterate:
            return cmd_iterate(cfg, out, err);
        }
    }
    catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitFailure;
    }
    return kExitFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    RunConfig cfg;
    CLI::App app{"Certified contraction factors for Davis-Yin splitting", "dyscert"};
    app.require_subcommand(1);

    std::string L_f = "1.5", L_g = "3", L_h = "1.3";
    std::string format;
    std::size_t grid_n = 0;

    auto smoothness_check = CLI::Validator(
        [](std::string& s) {
            try {
                Smoothness::parse(s);
                return std::string();
            }
            catch (const DomainError& e) {
                return std::string(e.what());
            }
        },
        "NUM|inf");

    auto add_common = [&](CLI::App* sub, std::vector<std::string> formats) {
        sub->add_option("--mu_f", cfg.mu_f, "strong convexity of f")->capture_default_str();
        sub->add_option("--L_f", L_f, "smoothness of f")->check(smoothness_check)->capture_default_str();
        sub->add_option("--mu_g", cfg.mu_g, "strong convexity of g")->capture_default_str();
        sub->add_option("--L_g", L_g, "smoothness of g")->check(smoothness_check)->capture_default_str();
        sub->add_option("--mu_h", cfg.mu_h, "strong convexity of h")->capture_default_str();
        sub->add_option("--L_h", L_h, "smoothness of h")->check(smoothness_check)->capture_default_str();
        sub->add_option("--alpha", cfg.alpha, "step size")->capture_default_str();
        sub->add_option("--lambda", cfg.lambda, "averaging parameter")->capture_default_str();
        sub->add_option("--grid-n", grid_n, "angles per circle");
        sub->add_option("--format", format, "output format")->check(CLI::IsMember(formats));
        sub->add_option("--out", cfg.output_path, "output file (default stdout)");
        sub->add_option("--seed", cfg.seed, "random seed")->capture_default_str();
    };

    auto* rates = app.add_subcommand("rates", "table of every certified rate");
    add_common(rates, {"csv", "json"});
    auto* srg = app.add_subcommand("srg", "export the sampled symbol cloud");
    add_common(srg, {"csv", "json", "svg"});
    auto* figure1 = app.add_subcommand("figure1", "sampled sup against the certified rates");
    add_common(figure1, {"csv", "json", "svg"});
    figure1->add_option("--cloud", cfg.cloud_path, "also write the symbol cloud here");
    figure1->add_option("--plot-grid-n", cfg.plot_grid_n, "angles per circle for --cloud")
        ->capture_default_str();
    auto* verify = app.add_subcommand("verify", "run the property battery");
    add_common(verify, {"csv", "json"});
    verify->add_option("--sets", cfg.sets, "parameter sets in the soundness sweeps");
    auto* iterate = app.add_subcommand("iterate", "run DYS on a quadratic instance");
    add_common(iterate, {"csv", "json"});
    iterate->add_option("--instance", cfg.instance_path, "instance file");
    iterate->add_option("--row", cfg.rows, "inline row \"c_f c_g c_h b_f b_g b_h\"");
    iterate->add_option("--iters", cfg.iters, "iterations")->capture_default_str();
    iterate->add_option("--tol", cfg.tol, "stop once a residual drops below this");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return kExitOk;
        }
        err << "usage error: " << e.what() << "\n\n";
        const auto subs = app.get_subcommands();
        err << (subs.empty() ? app.help() : subs.front()->help());
        return kExitUsage;
    }

    const std::pair<CLI::App*, Command> commands[] = {
        {rates, Command::rates},     {srg, Command::srg},
        {figure1, Command::figure1}, {verify, Command::verify},
        {iterate, Command::iterate}};
    CLI::App* chosen = nullptr;
    for (const auto& [sub, command] : commands) {
        if (sub->parsed()) {
            cfg.command = command;
            chosen = sub;
        }
    }
    cfg.L_f = Smoothness::parse(L_f);
    cfg.L_g = Smoothness::parse(L_g);
    cfg.L_h = Smoothness::parse(L_h);
    if (chosen->count("--grid-n") > 0) {
        cfg.grid_n = grid_n;
    }
    if (format == "csv") {
        cfg.format = Format::csv;
    }
    else if (format == "json") {
        cfg.format = Format::json;
    }
    else if (format == "svg") {
        cfg.format = Format::svg;
    }
    return execute(cfg, out, err);
}

}  // namespace dyscert::cli
