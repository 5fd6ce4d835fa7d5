// JSON artifacts, CSV tables, and SVG plots. JSON is the only structured
// format; emitted artifacts re-parse into equal in-memory values and are
// byte-stable for a fixed config and seed.
#pragma once

#include <json.hpp>
#include <string>

#include "sgw/rates.hpp"
#include "sgw/spectral.hpp"

namespace sgw {

using Json = nlohmann::json;

Json spectral_to_json(const SpectralFunction& f);
SpectralFunction spectral_from_json(const Json& j);

Json rate_report_to_json(const RateReport& rep);
Json envelope_report_to_json(const EnvelopeReport& rep);

std::string rate_report_csv(const RateReport& rep);
std::string envelope_report_csv(const EnvelopeReport& rep);

// log2(error) against the level, with the fitted line and the theoretical
// slope guide; accepts the JSON emitted by rate_report_to_json or
// envelope_report_to_json.
std::string report_svg(const Json& report);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// ---- experiment configs ------------------------------------------------------

struct SetSpec {
  std::string kind = "smolyak";  // smolyak | T | energy | full
  double eps = 0.0;              // energy only
};

struct FunctionSpec {
  std::string family = "block_lacunary";  // block_lacunary | korobov
  double a = 3.0, b = 0.0;                // korobov
  int cutoff = 32;                        // korobov
  double rho = 1.25;                      // block_lacunary
  int kmax = 15;                          // block_lacunary
};

struct ExperimentConfig {
  std::string mode = "rates";  // rates | sharpness
  std::string scheme = "kantorovich_corrected(1)";
  int dim = 2;
  RateSpec rate;
  SetSpec set;
  FunctionSpec function;
  std::vector<int> levels;
  std::uint64_t seed = 1;
  double tolerance = 0.3;
  int trials = 32;     // sharpness
  int n0 = 0;          // sharpness
  int replicates = 1;  // family draws averaged geometrically
  int threads = 1;
};

// Validates against module preconditions; throws std::invalid_argument
// naming the violated field or hypothesis.
ExperimentConfig config_from_json(const Json& j);
Json config_to_json(const ExperimentConfig& c);

}  // namespace sgw
