#pragma once

/**
 * @file frl.hpp
 * @brief Umbrella header for the library.
 */

#include "frl/base/bundle.hpp"
#include "frl/base/fields.hpp"
#include "frl/base/minkowski.hpp"
#include "frl/base/polynomial.hpp"
#include "frl/errors.hpp"
#include "frl/flatness/assembly.hpp"
#include "frl/flatness/conditions.hpp"
#include "frl/flatness/direct.hpp"
#include "frl/flatness/report.hpp"
#include "frl/inverse/inverse_metric.hpp"
#include "frl/randers/closed_forms.hpp"
#include "frl/randers/family.hpp"
#include "frl/randers/sampler.hpp"
#include "frl/randers/scalar_fields.hpp"
#include "frl/tensor/derivatives.hpp"
#include "frl/tensor/jet.hpp"
#include "frl/tensor/tensors.hpp"
