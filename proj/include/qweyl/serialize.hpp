#pragma once

#include <json.hpp>

#include "qweyl/config.hpp"
#include "qweyl/modules.hpp"

namespace qweyl {

using Json = nlohmann::json;

// Log-scale fields ("r_log", "eta_log", "tail_log", ...) store the base-p
// logarithm of a magnitude as rational text; null stands for the zero
// magnitude. Scalars are stored as canonical scalar text. The coefficient
// window always comes from the configuration; exponent keys outside it
// are rejected at load.

Json lognorm_to_log_field(const LogNorm& n);
LogNorm lognorm_from_log_field(const Json& j);

Json params_to_json(const AnnulusParams& params);
AnnulusParams params_from_json(const Json& j);

Json series_to_json(const LaurentElement& f);
LaurentElement series_from_json(const Json& j, const Config& cfg);

Json endo_to_json(const Endomorphism& endo);
Endomorphism endo_from_json(const Json& j, const AnnulusParams& params, const Config& cfg);

Json operator_to_json(const TwistedOperator& op);
TwistedOperator operator_from_json(const Json& j, const Config& cfg);

Json xipoly_to_json(const XiPolynomial& poly);
XiPolynomial xipoly_from_json(const Json& j, const Config& cfg);

Json connection_to_json(const ConnectionModule& m, int order_k);
ConnectionModule connection_from_json(const Json& j, const Config& cfg);

Json sigma_module_to_json(const SigmaModule& s, int order_k);
SigmaModule sigma_module_from_json(const Json& j, const Config& cfg);

Json load_json_file(const std::string& path);
void save_json_file(const Json& j, const std::string& path);

} // namespace qweyl
