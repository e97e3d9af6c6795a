#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "slitsim/model.hpp"
#include "slitsim/sorkin.hpp"

namespace slitsim {

// Error in the configuration text; line 0 means no specific line applies.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(int line, const std::string& message);
    int line() const { return line_; }

  private:
    int line_;
};

// Unit-suffixed scalars: lengths accept pm/nm/um/µm/mm/cm/m, angles accept
// rad/mrad/deg. Complex literals: "1", "-0.5", "2i", "1+2i", "1.5-0.5i".
double parse_length_m(std::string_view text);
double parse_angle_rad(std::string_view text);
Complex parse_complex(std::string_view text);

// Optional per-wavelength coupling constants for sweeps, linearly
// interpolated and clamped at the table ends.
struct CouplingTable {
    std::vector<double> wavelengths_m;                // strictly increasing
    std::vector<double> n_eff;                        // per wavelength
    std::vector<std::vector<double>> hop_amplitudes;  // [row][m-1]

    bool operator==(const CouplingTable&) const = default;
    CouplingModel at(double wavelength_m, int max_hops) const;
};

struct SweepConfig {
    SweepKind kind = SweepKind::intensity_map;
    double lambda_min_m = 0.0;
    double lambda_max_m = 0.0;
    int lambda_points = 0;
    std::optional<double> width_min_m;
    std::optional<double> width_max_m;
    std::optional<int> width_points;

    bool operator==(const SweepConfig&) const = default;
    std::vector<double> wavelength_axis() const;
    std::vector<double> width_axis() const;  // empty when no width axis was given
};

struct RsOptions {
    int samples_per_slit = 64;
    double screen_distance_m = 0.01;

    bool operator==(const RsOptions&) const = default;
};

struct ScenarioConfig {
    // [geometry]
    double slit_width_m = 0.0;
    double pitch_m = 0.0;
    int slit_count = 0;
    std::optional<double> slit_height_m;      // recorded only; the 2D model ignores it
    std::optional<double> film_thickness_m;   // recorded only
    // [illumination]
    double wavelength_m = 0.0;
    std::vector<Complex> slit_amplitudes;  // empty -> plane wave (all ones)
    // [coupling]
    double n_eff = 1.0;
    std::vector<double> hop_amplitudes;
    int max_hops = 0;
    std::optional<CouplingTable> coupling_table;
    // [grid]
    double theta_min_rad = 0.0;
    double theta_max_rad = 0.0;
    int grid_points = 0;
    // [pattern]
    std::vector<Mask> masks;  // empty -> the all-open mask
    // [rs]
    RsOptions rs;
    // [sweep]
    std::optional<SweepConfig> sweep;
    // [output]
    std::string output_prefix;

    bool operator==(const ScenarioConfig&) const = default;

    ModelBundle to_bundle() const;
    std::vector<Mask> pattern_masks() const;
    CouplingResolver resolver() const;
};

// Strict parse: unknown sections or keys, duplicates, malformed units and
// missing required keys are all reported with their line. The parsed config
// is validated through validate_config before it is returned.
ScenarioConfig parse_config(const std::string& text);

// Canonical text form; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ScenarioConfig& config);

}  // namespace slitsim
