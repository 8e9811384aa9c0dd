#include "robust_search/cost_model.hpp"

#include <cmath>
#include <string>

#include "robust_search/error.hpp"

namespace robust_search {

void CostModel::validate() const {
    if (!std::isfinite(delta) || !(delta > 0.0) || delta > 1.0) {
        throw ConfigError("delta must lie in (0, 1], got " + std::to_string(delta));
    }
    if (!std::isfinite(kappa) || kappa < 0.0) {
        throw ConfigError("kappa must be finite and >= 0, got " + std::to_string(kappa));
    }
    if (!(kappa + (1.0 - delta) > 0.0)) {
        throw ConfigError("search must be costly: need kappa > 0 when delta = 1");
    }
}

}  // namespace robust_search
