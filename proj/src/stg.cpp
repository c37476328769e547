#include "repoecg/stg.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "repoecg/errors.hpp"

namespace repoecg::stg {

namespace {

LeadComponent up(const char* id) { return {id, Direction::crest}; }
LeadComponent down(const char* id) { return {id, Direction::trough}; }

LeadStrip strip(std::vector<LeadComponent> components, std::optional<std::string> period) {
    return {std::move(components), std::move(period)};
}

} // namespace

const std::vector<LeadSpec>& lead_registry() {
    using namespace metrics::component;
    static const std::vector<LeadSpec> leads = {
        {"issues", "Issues",
         {strip({up(issues_created), down(issues_closed)}, issue_closure_duration)}},
        {"altruism", "Altruism",
         {strip({up(useful_issue_comment_ratio), down(toxic_issue_comment_ratio)},
                issue_closure_duration)}},
        {"prs", "PRs", {strip({up(prs_created), down(prs_closed)}, pr_closure_duration)}},
        {"utility", "Utility",
         {strip({up(useful_review_comment_ratio), down(toxic_review_comment_ratio)},
                pr_closure_duration)}},
        {"commits", "Commits",
         {strip({up(commits_total), down(commit_authors), down(dmm_unit_interfacing),
                 down(dmm_unit_complexity), down(dmm_unit_size)},
                std::nullopt)}},
        {"dev_response_issues", "Developer Response I",
         {strip({up(issue_reporters), down(issue_comments)}, issue_response_time)}},
        {"dev_response_prs", "Developer Response PR",
         {strip({up(pr_creators), down(review_comments)}, pr_response_time)}},
        {"labels_issues", "Labels-I",
         {strip({up(issue_labels_new), down(issue_labels_total)}, issue_response_time)}},
        {"labels_prs", "Labels-PR",
         {strip({up(pr_labels_new), down(pr_labels_total)}, pr_response_time)}},
        {"newcomer_support", "Newcomer Support",
         {strip({up(newcomer_issues), down(deduplicated_issues)}, issue_response_time)}},
        {"sentiment", "Sentiment (support)",
         {strip({up(issue_comment_sentiment_median), down(review_comment_sentiment_median)},
                issue_response_time)}},
        {"readability", "Readability I/PR",
         {strip({up(issue_comment_readability), down(issue_body_readability)},
                issue_response_time),
          strip({up(pr_comment_readability), down(pr_body_readability)}, pr_response_time)}},
        {"emoji_reactions", "Emoji Reactions",
         {strip({up(reactions_issues), down(reactions_issue_comments),
                 up(reactions_review_comments)},
                std::nullopt)}},
        {"cbe_developer_commits", "CBE developer C",
         {strip({up(affiliation_heterogeneity_commits), down(parent_commits)}, std::nullopt)}},
        {"cbe_developer_issues", "CBE developer I",
         {strip({up(gender_ratio_issues), down(location_coverage_issues)}, issue_response_time)}},
        {"cbe_developer_prs", "CBE developer PR",
         {strip({up(gender_ratio_prs), down(location_coverage_prs)}, pr_response_time)}},
        {"cbe_roles_issues", "CBE roles I",
         {strip({up(association_heterogeneity_issues), down(user_type_variation_issues)},
                issue_response_time)}},
        {"cbe_roles_prs", "CBE roles PR",
         {strip({up(association_heterogeneity_prs), down(user_type_variation_prs)},
                pr_response_time)}},
    };
    return leads;
}

double amplitude_for(const metrics::ComponentSpec& spec, double value) {
    switch (spec.kind) {
        case metrics::ValueKind::count:
        case metrics::ValueKind::duration:
            return std::log10(1.0 + std::max(value, 0.0));
        case metrics::ValueKind::ratio:
        case metrics::ValueKind::score:
        case metrics::ValueKind::index:
            return std::abs(value) * spec.render_scale;
    }
    return 0.0;
}

StgDocument build_stg(const metrics::MonthlyTable& table, util::YearMonth first,
                      util::YearMonth last) {
    const int first_ord = util::month_ordinal(first);
    const int last_ord = util::month_ordinal(last);
    if (first_ord > last_ord) fail(Errc::runtime, "empty month window");

    std::map<int, const metrics::MonthlyRow*> row_by_ordinal;
    for (const auto& row : table.rows)
        row_by_ordinal[util::month_ordinal({row.bucket.year, row.bucket.month})] = &row;

    StgDocument doc;
    doc.repo_slug = table.repo_slug;
    doc.first = first;
    doc.last = last;

    for (const auto& lead : lead_registry()) {
        LaneDoc lane;
        lane.lead_id = lead.lead_id;
        lane.label = lead.label;
        for (const auto& lead_strip : lead.strips) {
            StripDoc strip_doc;
            for (int ord = first_ord; ord <= last_ord; ++ord) {
                const metrics::MonthlyRow* row = nullptr;
                if (auto it = row_by_ordinal.find(ord); it != row_by_ordinal.end())
                    row = it->second;

                Cycle cycle;
                cycle.month = util::month_from_ordinal(ord);
                for (const auto& comp : lead_strip.components) {
                    const metrics::ComponentSpec* spec = metrics::find_component(comp.component_id);
                    if (!spec) fail(Errc::runtime, "unknown component " + comp.component_id);
                    CycleSpike spike;
                    spike.component_id = comp.component_id;
                    spike.direction = comp.direction;
                    std::optional<double> value = row ? row->get(comp.component_id) : std::nullopt;
                    if (value) {
                        spike.amplitude = amplitude_for(*spec, *value);
                        spike.negative = *value < 0.0;
                    } else {
                        spike.absent = true;
                    }
                    cycle.spikes.push_back(std::move(spike));
                }
                if (lead_strip.period_component) {
                    std::optional<double> seconds =
                        row ? row->get(*lead_strip.period_component) : std::nullopt;
                    if (seconds) {
                        cycle.period_width = std::log10(1.0 + std::max(*seconds, 0.0));
                    } else {
                        cycle.period_absent = true;
                        cycle.period_width = 1.0; // placeholder extent, styled absent
                    }
                } else {
                    cycle.period_width = 1.0; // fixed unit tail for period-free leads
                }
                strip_doc.cycles.push_back(std::move(cycle));
            }
            lane.strips.push_back(std::move(strip_doc));
        }
        doc.lanes.push_back(std::move(lane));
    }
    return doc;
}

// ---------------------------------------------------------------------------
// SVG rendering
// ---------------------------------------------------------------------------

namespace {

std::string xml_escape(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string px(double value) { return util::format_fixed(value, 2); }

// The marks every drawn month occupies: up to five spike slots then the
// period tail. Slot geometry is global so months align across lanes.
struct Geometry {
    double inset = 2.0;       // flat lead-in inside the slot
    double spike_gap = 2.0;   // flat run between spikes
    double tail_gap = 6.0;    // disconnection gap at the slot end
    double slot_width = 0.0;
    double clip_pad = 3.0;    // keeps clipped apexes inside the strip row

    explicit Geometry(const StyleConfig& style) {
        slot_width = inset + 5.0 * (style.spike_base_px + spike_gap) +
                     style.period_max_decades * style.period_px_per_decade + tail_gap;
    }
};

} // namespace

std::string render_svg(const StgDocument& doc, const StyleConfig& style) {
    const Geometry geo(style);
    const int months = util::month_ordinal(doc.last) - util::month_ordinal(doc.first) + 1;

    std::size_t strip_rows = 0;
    for (const auto& lane : doc.lanes) strip_rows += lane.strips.size();

    const double margin_top = 30.0;
    const double axis_height = 24.0;
    const double right_margin = 8.0;
    const double width = style.label_width + months * geo.slot_width + right_margin;
    const double height = margin_top + static_cast<double>(strip_rows) * style.lane_height +
                          axis_height;

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(width) + "\" height=\"" +
           px(height) + "\" viewBox=\"0 0 " + px(width) + " " + px(height) + "\">\n";
    svg += "<style>\n";
    svg += ".bg{fill:" + style.background + ";}\n";
    svg += ".sp{stroke:" + style.stroke_color + ";fill:none;stroke-width:1.2;}\n";
    svg += ".base{stroke:" + style.stroke_color + ";fill:none;stroke-width:0.8;}\n";
    svg += ".absent{stroke:" + style.absent_color + ";stroke-dasharray:2,2;}\n";
    svg += ".neg{stroke:#6d28d9;}\n";
    svg += ".clipmark{stroke:" + style.absent_color + ";stroke-width:1.4;fill:none;}\n";
    svg += ".grid{stroke:" + style.grid_color + ";stroke-width:0.5;fill:none;}\n";
    svg += ".lanegrid{stroke:" + style.grid_color + ";stroke-width:0.9;fill:none;}\n";
    svg += "text{font-family:" + style.font_family + ";fill:#1f2937;}\n";
    svg += ".ttl{font-size:13px;font-weight:bold;}\n";
    svg += ".lbl{font-size:11px;}\n";
    svg += ".sub{font-size:9px;fill:#6b7280;}\n";
    svg += ".axis{font-size:9px;fill:#6b7280;}\n";
    svg += "</style>\n";
    svg += "<rect class=\"bg\" x=\"0\" y=\"0\" width=\"" + px(width) + "\" height=\"" + px(height) +
           "\"/>\n";

    svg += "<text class=\"ttl\" x=\"" + px(8.0) + "\" y=\"" + px(19.0) + "\">" +
           xml_escape(doc.repo_slug) + "  " + util::month_label(doc.first) + " to " +
           util::month_label(doc.last) + "</text>\n";

    const double plot_top = margin_top;
    const double plot_bottom = margin_top + static_cast<double>(strip_rows) * style.lane_height;

    // Month grid and axis labels.
    for (int m = 0; m <= months; ++m) {
        double x = style.label_width + m * geo.slot_width;
        svg += "<line class=\"grid\" x1=\"" + px(x) + "\" y1=\"" + px(plot_top) + "\" x2=\"" +
               px(x) + "\" y2=\"" + px(plot_bottom) + "\"/>\n";
    }
    for (int m = 0; m < months; ++m) {
        util::YearMonth ym = util::month_from_ordinal(util::month_ordinal(doc.first) + m);
        double x = style.label_width + m * geo.slot_width + 4.0;
        svg += "<text class=\"axis\" x=\"" + px(x) + "\" y=\"" + px(plot_bottom + 14.0) + "\">" +
               util::month_label(ym) + "</text>\n";
    }

    // Lane separators, labels, and waveforms.
    std::size_t row = 0;
    for (const auto& lane : doc.lanes) {
        const double lane_top = plot_top + static_cast<double>(row) * style.lane_height;
        const double lane_bottom =
            lane_top + static_cast<double>(lane.strips.size()) * style.lane_height;
        svg += "<line class=\"lanegrid\" x1=\"0\" y1=\"" + px(lane_top) + "\" x2=\"" + px(width) +
               "\" y2=\"" + px(lane_top) + "\"/>\n";
        svg += "<text class=\"lbl\" x=\"" + px(8.0) + "\" y=\"" +
               px((lane_top + lane_bottom) / 2.0 + 4.0) + "\">" + xml_escape(lane.label) +
               "</text>\n";

        for (std::size_t s = 0; s < lane.strips.size(); ++s) {
            const StripDoc& strip_doc = lane.strips[s];
            const double strip_top = lane_top + static_cast<double>(s) * style.lane_height;
            const double baseline = strip_top + style.lane_height / 2.0;
            const double usable = style.lane_height / 2.0 - geo.clip_pad;

            if (lane.strips.size() > 1) {
                const char* sub = s == 0 ? "I" : "PR";
                svg += "<text class=\"sub\" x=\"" + px(style.label_width - 22.0) + "\" y=\"" +
                       px(baseline + 3.0) + "\">" + sub + "</text>\n";
            }

            for (std::size_t m = 0; m < strip_doc.cycles.size(); ++m) {
                const Cycle& cycle = strip_doc.cycles[m];
                double x = style.label_width + static_cast<double>(m) * geo.slot_width + geo.inset;
                const double cycle_start = x;

                std::string spikes_svg;
                for (const auto& spike : cycle.spikes) {
                    double h = spike.amplitude * style.decade_px;
                    bool clipped = h > usable;
                    if (clipped) h = usable;
                    double apex_y =
                        spike.direction == Direction::crest ? baseline - h : baseline + h;
                    std::string cls = "sp";
                    if (spike.absent) cls += " absent";
                    if (spike.negative) cls += " neg";
                    spikes_svg += "<path class=\"" + cls + "\" d=\"M" + px(x) + " " + px(baseline) +
                                  " L" + px(x + style.spike_base_px / 2.0) + " " + px(apex_y) +
                                  " L" + px(x + style.spike_base_px) + " " + px(baseline) +
                                  "\"/>\n";
                    if (clipped) {
                        double cx = x + style.spike_base_px / 2.0;
                        spikes_svg += "<path class=\"clipmark\" d=\"M" + px(cx - 2.5) + " " +
                                      px(apex_y) + " L" + px(cx + 2.5) + " " + px(apex_y) +
                                      "\"/>\n";
                    }
                    x += style.spike_base_px + geo.spike_gap;
                }

                double period_px = std::min(cycle.period_width, style.period_max_decades) *
                                   style.period_px_per_decade;
                double period_end = x + period_px;

                // Baseline under the spikes, then the period tail (which is
                // the same flat line, but styled when the period is absent).
                svg += "<path class=\"base\" d=\"M" + px(cycle_start) + " " + px(baseline) + " L" +
                       px(x) + " " + px(baseline) + "\"/>\n";
                if (period_px > 0.0) {
                    std::string cls = cycle.period_absent ? "base absent" : "base";
                    svg += "<path class=\"" + cls + "\" d=\"M" + px(x) + " " + px(baseline) +
                           " L" + px(period_end) + " " + px(baseline) + "\"/>\n";
                }
                svg += spikes_svg;
            }
        }
        row += lane.strips.size();
    }
    svg += "<line class=\"lanegrid\" x1=\"0\" y1=\"" + px(plot_bottom) + "\" x2=\"" + px(width) +
           "\" y2=\"" + px(plot_bottom) + "\"/>\n";
    svg += "</svg>\n";
    return svg;
}

std::filesystem::path stg_output_path(const std::filesystem::path& out_dir,
                                      std::string_view repo_label, std::string_view window_name) {
    std::string dir_name(repo_label);
    if (auto slash = dir_name.find('/'); slash != std::string::npos)
        dir_name = dir_name.substr(0, slash) + "__" + dir_name.substr(slash + 1);
    return out_dir / dir_name / (std::string("stg_") + std::string(window_name) + ".svg");
}

} // namespace repoecg::stg
