#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "repoecg/components.hpp"
#include "repoecg/metricize.hpp"
#include "repoecg/util.hpp"

namespace repoecg::stg {

enum class Direction { crest, trough };

struct LeadComponent {
    std::string component_id;
    Direction direction;
};

// One waveform strip: spike components in table order plus an optional
// period (duration) component. Most leads are a single strip; the combined
// readability lead renders its issue and PR variants as two strips in one
// row slot.
struct LeadStrip {
    std::vector<LeadComponent> components;
    std::optional<std::string> period_component;
};

struct LeadSpec {
    std::string lead_id;
    std::string label;
    std::vector<LeadStrip> strips;
};

// The 18-lead registry, in row order.
const std::vector<LeadSpec>& lead_registry();

// ---- document ---------------------------------------------------------------

struct CycleSpike {
    std::string component_id;
    Direction direction;
    double amplitude = 0.0; // nonnegative, in decades; 0 for zero or absent
    bool absent = false;    // styled distinguishably from a true zero
    bool negative = false;  // value < 0 (sentiment); magnitude drawn, sign styled
};

struct Cycle {
    util::YearMonth month{};
    std::vector<CycleSpike> spikes;
    double period_width = 0.0; // decades; fixed unit width when no period component
    bool period_absent = false;
};

struct StripDoc {
    std::vector<Cycle> cycles; // one per month in the window
};

struct LaneDoc {
    std::string lead_id;
    std::string label;
    std::vector<StripDoc> strips;
};

struct StgDocument {
    std::string repo_slug;
    util::YearMonth first{};
    util::YearMonth last{};
    std::vector<LaneDoc> lanes; // always 18
};

// Amplitude of one component value, in decades: log10(1 + v) for counts and
// durations, |v| * render_scale for ratios/scores/indices.
double amplitude_for(const metrics::ComponentSpec& spec, double value);

// Builds the document for an inclusive month window. Rows outside the window
// are ignored; months without a row yield all-absent cycles. Empty window →
// Error(runtime).
StgDocument build_stg(const metrics::MonthlyTable& table, util::YearMonth first,
                      util::YearMonth last);

struct StyleConfig {
    double lane_height = 56.0;    // px per strip row
    double label_width = 150.0;   // left gutter for lead names
    double decade_px = 16.0;      // vertical px per decade of amplitude
    double spike_base_px = 7.0;   // triangle base width
    double period_px_per_decade = 9.0;
    double period_max_decades = 8.0; // horizontal room reserved per cycle
    std::string font_family = "Helvetica, Arial, sans-serif";
    std::string stroke_color = "#14523d";
    std::string absent_color = "#b91c1c";
    std::string grid_color = "#d4d4d8";
    std::string background = "#ffffff";
};

// Deterministic SVG: same document + style → identical bytes.
std::string render_svg(const StgDocument& doc, const StyleConfig& style = {});

// <out_dir>/<repo_label>/stg_<window>.svg
std::filesystem::path stg_output_path(const std::filesystem::path& out_dir,
                                      std::string_view repo_label, std::string_view window_name);

} // namespace repoecg::stg
