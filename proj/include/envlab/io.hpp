#pragma once

#include <string>

#include "envlab/envelope.hpp"
#include "envlab/geodesic.hpp"
#include "envlab/grid.hpp"

namespace envlab {

// "%.17g" everywhere: reports are byte-identical across runs
std::string format_double(double v);

// (x, y, value) rows for non-exterior nodes, header included
std::string field_to_csv(const Field& f);
void write_text_file(const std::string& path, const std::string& content);
void ensure_directory(const std::string& path);

// field CSV plus a JSON sidecar with the solve stats
void write_envelope_report(const std::string& dir, const std::string& stem,
                           const EnvelopeReport& report);

// per-t CSV fields plus manifest.json (t_grid, C_grid, per-C stats)
void write_slab(const std::string& dir, const GeodesicSlab& slab);

}  // namespace envlab
