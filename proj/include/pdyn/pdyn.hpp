#pragma once

#include "pdyn/error.hpp"

#include "pdyn/engine/delays.hpp"
#include "pdyn/engine/flow_model.hpp"
#include "pdyn/engine/sim_config.hpp"
#include "pdyn/engine/simulate.hpp"
#include "pdyn/engine/stock_vector.hpp"
#include "pdyn/engine/table_function.hpp"
#include "pdyn/engine/time_series.hpp"

#include "pdyn/model/parameters.hpp"
#include "pdyn/model/project_model.hpp"
#include "pdyn/model/sectors.hpp"
#include "pdyn/model/state.hpp"

#include "pdyn/volatility/change_request.hpp"
#include "pdyn/volatility/patterns.hpp"
#include "pdyn/volatility/series.hpp"

#include "pdyn/calibration/calibration.hpp"

#include "pdyn/scenario/compare.hpp"
#include "pdyn/scenario/csv.hpp"
#include "pdyn/scenario/json_io.hpp"
#include "pdyn/scenario/report.hpp"
#include "pdyn/scenario/scenario.hpp"
#include "pdyn/scenario/sweep.hpp"
