#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "ultrachirp/asymptotics.hpp"
#include "ultrachirp/diagnostics.hpp"
#include "ultrachirp/dynamics.hpp"
#include "ultrachirp/signal.hpp"

namespace ultrachirp::cli {

using json = nlohmann::json;

/// 17 significant digits, scientific notation.
std::string format_number(double v);

/// "# model=<model> amplitude=... chirp=... carrier=... transition=..."
std::string comment_line(std::string_view model, const PulseParams& p);

std::string trajectory_csv(const Trajectory& tr);
std::string decomposition_csv(const Decomposition& d, const PulseParams& p);

struct NamedSpectrum {
    std::string name;
    Spectrum spectrum;
};
/// All spectra must share one frequency axis.
std::string spectrum_csv(const std::vector<NamedSpectrum>& spectra, const PulseParams& p);
std::string adiabaticity_csv(const AdiabaticityReport& r, const PulseParams& p);
std::string asymptotics_csv(const std::vector<AsymptoticRow>& rows, const PulseParams& p);

/// Writes to a sibling temporary and renames over `path`.
void write_atomic(const std::filesystem::path& path, std::string_view content);

json to_json(const PulseParams& p);
json to_json(const TimeGrid& g);
json to_json(const IntegratorConfig& c);
json to_json(const ConvergenceReport& r);
json to_json(const Closeness& c);
json to_json(const ResonanceReport& r);
json to_json(const AdiabaticityReport& r);
json to_json(const UnitConversion& u);
json to_json(const DimensionalPulse& d);

/// Machine-readable description of an exception, for stderr and manifests.
json error_json(const std::exception& e);

}  // namespace ultrachirp::cli
