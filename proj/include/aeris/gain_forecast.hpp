#pragma once

namespace aeris {

// Predicted large-scale gain of one link at one future instant.
struct GainForecast {
  double mean_db = 0.0;
  double std_db = 0.0;
  double lead_time = 0.0;  // seconds ahead of the forecaster's "now"
};

}  // namespace aeris
