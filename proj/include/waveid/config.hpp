#pragma once

#include <string>

#include "json.hpp"
#include "waveid/fields.hpp"
#include "waveid/quadrature.hpp"
#include "waveid/sidf.hpp"

namespace waveid {

// {"type":"gaussian","amplitude":A,"alpha":a,"beta":b,"t_center":t,"x_center":[...]}
GaussianParams gaussian_params_from_json(const nlohmann::json& j);
nlohmann::json to_json(const GaussianParams& p);

// Missing keys keep the values already in `base`.
QuadratureSpec quadrature_spec_from_json(const nlohmann::json& j, QuadratureSpec base = {});
nlohmann::json to_json(const QuadratureSpec& s, int n);

nlohmann::json to_json(const SidfReport& r);

nlohmann::json read_json_file(const std::string& path);

}  // namespace waveid
