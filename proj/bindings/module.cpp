#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "repoecg/enrich.hpp"
#include "repoecg/errors.hpp"
#include "repoecg/gitmine.hpp"
#include "repoecg/stats.hpp"
#include "repoecg/wordscore.hpp"

namespace py = pybind11;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Core operations: diversity, readability, text scoring, nonparametric "
              "statistics, fighting words, and diff unit extraction.";

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const repoecg::Error& e) {
            const std::string message =
                std::string("(") + repoecg::errc_name(e.code()) + ") " + e.what();
            PyErr_SetString(PyExc_RuntimeError, message.c_str());
        }
    });

    m.def("shannon_index", &repoecg::enrich::shannon_index, py::arg("category_counts"),
          "Shannon diversity H' = -sum p_i ln p_i over category counts.");

    m.def("strip_markup", [](const std::string& text) { return repoecg::enrich::strip_markup(text); },
          py::arg("markdown"),
          "Removes fenced code blocks, inline code spans, and URLs.");

    m.def("count_syllables",
          [](const std::string& word) { return repoecg::enrich::count_syllables(word); },
          py::arg("word"));

    m.def("flesch_reading_ease",
          [](const std::string& body) { return repoecg::enrich::flesch_reading_ease(body); },
          py::arg("body"),
          "Flesch Reading Ease of the markup-stripped text; None when word-free.");

    m.def("score_text",
          [](const std::string& body) {
              const repoecg::enrich::TextScore s = repoecg::enrich::score_text(body);
              py::dict out;
              out["sentiment"] = s.sentiment;
              out["useful"] = s.useful;
              out["toxic"] = s.toxic;
              return out;
          },
          py::arg("body"), "Bundled lexicon scorer: sentiment, usefulness, toxicity.");

    m.def("wilcoxon_signed_rank",
          [](const std::vector<double>& a, const std::vector<double>& b) {
              const repoecg::stats::WilcoxonResult r = repoecg::stats::wilcoxon_signed_rank(a, b);
              py::dict out;
              out["w"] = r.w;
              out["p"] = r.p;
              out["n"] = r.n;
              out["exact"] = r.exact;
              return out;
          },
          py::arg("a"), py::arg("b"),
          "Paired Wilcoxon signed-rank test; two-sided p, exact where feasible.");

    m.def("holm_bonferroni", &repoecg::stats::holm_bonferroni, py::arg("p_values"),
          "Holm step-down adjustment, result in input order.");

    m.def("cliffs_delta", &repoecg::stats::cliffs_delta, py::arg("a"), py::arg("b"),
          "Cliff's delta effect size in [-1, 1].");

    m.def("clean_text", [](const std::string& raw) { return repoecg::words::clean_text(raw); },
          py::arg("raw"),
          "Lowercased word tokens: code, URLs, and mentions removed, punctuation stripped.");

    m.def("fighting_words",
          [](const std::vector<std::string>& useful, const std::vector<std::string>& not_useful,
             double alpha, int ngram_max, long min_count) {
              repoecg::words::FightingWordsOptions options;
              options.alpha = alpha;
              options.ngram_max = ngram_max;
              options.min_count = min_count;
              py::list out;
              for (const auto& s : repoecg::words::fighting_words(useful, not_useful, options)) {
                  py::dict row;
                  row["token"] = s.token;
                  row["count_useful"] = s.count_useful;
                  row["count_not_useful"] = s.count_not_useful;
                  row["log_odds"] = s.log_odds;
                  row["z"] = s.z;
                  row["top10_class"] = s.top10_class;
                  out.append(row);
              }
              return out;
          },
          py::arg("useful_texts"), py::arg("not_useful_texts"), py::arg("alpha") = 0.1,
          py::arg("ngram_max") = 2, py::arg("min_count") = 5,
          "Log-odds with informative Dirichlet prior; z-scored tokens, z descending.");

    m.def("extract_units",
          [](const std::string& diff_text, const std::string& file_path) {
              py::list out;
              for (const auto& u : repoecg::gitmine::extract_units(diff_text, file_path)) {
                  py::dict row;
                  row["file_path"] = u.file_path;
                  row["unit_name"] = u.unit_name;
                  row["size_loc"] = u.size_loc;
                  row["cyclomatic"] = u.cyclomatic;
                  row["param_count"] = u.param_count;
                  row["churn"] = u.churn;
                  out.append(row);
              }
              return out;
          },
          py::arg("diff_text"), py::arg("file_path"),
          "Changed function-like units in one file's unified diff.");

    m.attr("__version__") = "0.1.0";
}
