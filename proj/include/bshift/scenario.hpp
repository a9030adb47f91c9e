#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bshift/equivalence.hpp"
#include "bshift/structure.hpp"

namespace bshift {

using Json = nlohmann::json;

// Scenario or report input problems; the CLI maps these to exit code 2.
class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SubspaceJob {
  std::string name;
  std::string kind;  // type1 | type2 | reducing | custom
  std::string inner_spec;
  Matrix parameter_space;  // type2
  Matrix g_basis;          // reducing
  Matrix columns;          // custom; orthonormalized on load
};

struct Analysis {
  std::string kind;  // verify | classify | canonical | equivalence |
                     // power_growth | c00 | irreducibility
  std::string subspace;
  std::string inner_spec;
  std::string expect_class;
  std::string mode;  // equivalence: type1 | scalar_type2
  std::string left_spec;
  std::string right_spec;
  std::optional<double> left_sigma, left_theta, right_sigma, right_theta;
  std::optional<bool> expect_equivalent;
  int n_max = -1;
  int m_max = -1;
  int trials = -1;
  double tolerance = 0.0;   // 0 = module default
  bool include_basis = false;  // verify: embed the basis in the result
};

struct Scenario {
  int schema_version = 1;
  std::string name;
  std::uint64_t seed = 0;
  AmbientSpec ambient{1, 64};
  double sigma = 1.0;
  double theta = 0.0;
  std::vector<std::pair<std::string, InnerSpec>> inner_specs;
  std::vector<SubspaceJob> jobs;
  std::vector<Analysis> analyses;
};

// JSON encodings: a complex number is [re, im], a matrix is an array of
// rows. InnerSpec carries `constant_factor` and
// `factors[] = {kind, zero_re, zero_im, projection?}`.
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j, const std::string& field);
Json inner_spec_to_json(const InnerSpec& spec);
InnerSpec inner_spec_from_json(const Json& j, const std::string& field);
Json subspace_to_json(const SubspaceBasis& basis);

// Parses and fully validates; throws ScenarioError with field diagnostics.
// No computation happens until the scenario is structurally sound.
Scenario parse_scenario(const Json& j);
Scenario load_scenario_file(const std::string& path);
Json scenario_to_json(const Scenario& s);

struct RunOptions {
  std::optional<std::uint64_t> seed;
  std::optional<int> degree;
};

// Executes every analysis and assembles the report. Deterministic for a
// fixed (scenario, seed) up to the generated_at field.
Json run_scenario(const Scenario& scenario, const RunOptions& options = {});
bool report_passed(const Json& report);

std::vector<std::string> bundled_scenario_names();
std::string bundled_scenario_text(const std::string& name);

}  // namespace bshift
