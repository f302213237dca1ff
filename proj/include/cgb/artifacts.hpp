#pragma once

#include <string>
#include <vector>

#include "cgb/config.hpp"
#include "cgb/counting.hpp"
#include "cgb/ensemble.hpp"
#include "cgb/sweep.hpp"

namespace cgb {

// Artifacts are rendered fully in memory and written once, atomically.
void write_file_atomic(const std::string& path, const std::string& content);

std::string render_intervals_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels);
std::string render_anchors_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels);
std::string render_rects_csv(const RunConfig& cfg, const std::vector<LevelSet>& levels);
std::string render_counts_csv(const RunConfig& cfg, const std::vector<PairCountRecord>& rows);
std::string render_areas_csv(const RunConfig& cfg, int n, double delta, double cell,
                             const std::vector<ProfileEntry>& profile);

// Debug dump: one row per vertex, grouped by polygon id.
std::string render_polygons_csv(std::span<const ConvexPoly> polys);

nlohmann::json bound_to_json(const BoundReport& rep);
nlohmann::json report_to_json(const RunConfig& cfg, const SweepReports& reports);
nlohmann::json chain_to_json(const RunConfig& cfg, int n, double delta, const ChainReport& chain);

// Markdown rendering of whatever artifacts exist under dir ("no computation").
std::string render_summary_markdown(const std::string& dir);

}  // namespace cgb
