#pragma once

#include "impactplot/cli.hpp"
#include "impactplot/data_model.hpp"
#include "impactplot/errors.hpp"
#include "impactplot/metrics.hpp"
#include "impactplot/model_json.hpp"
#include "impactplot/percentile.hpp"
#include "impactplot/plot_models.hpp"
#include "impactplot/svg_render.hpp"
