#pragma once

#include "robust_search/cost_model.hpp"
#include "robust_search/environment.hpp"
#include "robust_search/error.hpp"
#include "robust_search/json_codec.hpp"
#include "robust_search/payoff.hpp"
#include "robust_search/rules.hpp"
#include "robust_search/simulator.hpp"
#include "robust_search/stopping_rule.hpp"
#include "robust_search/verifier.hpp"
