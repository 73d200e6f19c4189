#pragma once

#include <string>

namespace rcfdtd {

/// Deterministic SVG rendering of a known CSV schema: fixed canvas, fixed
/// number formatting, no timestamps.
///   history     -> max-error time series (log y)
///   convergence -> log-log error vs h with slope-2/slope-4 guide lines
///   scan        -> |A| heatmap over (Gamma, Omega) at the xi = 0 slice
///   snapshot    -> errEx heatmap over (x, y)
void plot_emit(const std::string& csv_path, const std::string& kind,
               const std::string& svg_path);

}  // namespace rcfdtd
