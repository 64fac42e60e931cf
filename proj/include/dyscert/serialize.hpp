#ifndef DYSCERT_SERIALIZE_HPP
#define DYSCERT_SERIALIZE_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

#include "dyscert/class_geometry.hpp"
#include "dyscert/dys_engine.hpp"
#include "dyscert/rates.hpp"
#include "dyscert/summary.hpp"
#include "dyscert/symbol_sampling.hpp"
#include "dyscert/verify.hpp"

namespace dyscert {

using Json = nlohmann::ordered_json;

/// Fixed 17-significant-digit form; parses back to the same double.
std::string format_number(double x);

/// Two-space indented JSON with numbers written by format_number. Arrays of
/// scalars stay on one line.
std::string dump_json(const Json& doc);

using CsvCell = std::variant<std::monostate, double, std::string>;

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<CsvCell>> rows;
};

/// Comma-separated, '\n' line ends, RFC 4180 quoting where needed.
std::string write_csv(const CsvTable& table);
/// Unquoted cells that parse as a number become doubles; throws DomainError
/// on ragged rows or unterminated quotes.
CsvTable read_csv(std::string_view text);

Json params_json(const FunctionClass& f, const FunctionClass& g,
                 const FunctionClass& h, const AlgoParams& params);

CsvTable rates_csv(const std::vector<RateResult>& table);
Json rates_json(const FunctionClass& f, const FunctionClass& g,
                const FunctionClass& h, const AlgoParams& params,
                const std::vector<RateResult>& table);

/// Columns re, im, modulus, phi_f, phi_g, phi_h.
CsvTable cloud_csv(const std::vector<SymbolPoint>& cloud);
Json cloud_json(const FunctionClass& f, const FunctionClass& g,
                const FunctionClass& h, const AlgoParams& params,
                const SupEstimate& estimate,
                const std::vector<SymbolPoint>& cloud);

Json figure1_json(const FunctionClass& f, const FunctionClass& g,
                  const FunctionClass& h, const AlgoParams& params,
                  const InstanceSummary& summary);

/// Columns k, residual, pair_ratio.
CsvTable iteration_csv(const IterationLog& log);
Json iteration_json(const DysInstance& inst, const IterationLog& log,
                    const IterationSummary& summary);

CsvTable verify_csv(const VerifyReport& report);
Json verify_json(const VerifyReport& report);

struct SvgCircle {
    std::string label;
    double radius = 0.0;
    std::string color;
};

/// Symbol values as small squares, certified radii as circles about the
/// origin, on the fixed window [-1.2, 1.2]^2.
std::string render_srg_svg(const std::vector<SymbolPoint>& cloud,
                           const std::vector<SvgCircle>& circles,
                           std::string_view title);

}  // namespace dyscert

#endif  // DYSCERT_SERIALIZE_HPP
