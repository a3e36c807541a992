#ifndef WPCN_WPCN_HPP
#define WPCN_WPCN_HPP

#include "analytics.hpp"
#include "config.hpp"
#include "experiment.hpp"
#include "fading.hpp"
#include "model.hpp"
#include "oracle.hpp"
#include "policy.hpp"
#include "quadrature.hpp"
#include "simulator.hpp"
#include "special_functions.hpp"

#endif
