#include "focus/harness.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "json.hpp"

#include "focus/errors.hpp"

namespace focus {
namespace {

PrecisionCurve build_curve(std::span<const CrawlRecord> records,
                           const std::function<bool(const CrawlRecord&)>& hit) {
  if (records.empty()) throw Error(ErrorCode::kEmptyRun, "no pages were downloaded");
  PrecisionCurve curve;
  curve.reserve(records.size());
  std::size_t relevant = 0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    if (hit(records[i])) ++relevant;
    curve.push_back({i + 1, relevant,
                     static_cast<double>(relevant) / static_cast<double>(i + 1)});
  }
  return curve;
}

std::string fixed6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  return out;
}

}  // namespace

PrecisionCurve precision_curve(std::span<const CrawlRecord> records) {
  return build_curve(records, [](const CrawlRecord& r) { return r.relevant; });
}

PrecisionCurve precision_curve(
    std::span<const CrawlRecord> records,
    const std::function<bool(const std::string&)>& is_relevant) {
  return build_curve(records,
                     [&](const CrawlRecord& r) { return is_relevant(r.url); });
}

double final_precision(const PrecisionCurve& curve) {
  if (curve.empty()) throw Error(ErrorCode::kEmptyRun, "empty precision curve");
  return curve.back().precision;
}

double mean_precision(const PrecisionCurve& curve, double begin_fraction,
                      double end_fraction) {
  if (curve.empty()) throw Error(ErrorCode::kEmptyRun, "empty precision curve");
  const auto n = static_cast<double>(curve.size());
  auto first = static_cast<std::size_t>(begin_fraction * n);
  auto last = static_cast<std::size_t>(end_fraction * n);
  last = std::min(last, curve.size());
  if (first >= last) {
    // Window narrower than one point: take the point it falls on.
    first = std::min(first, curve.size() - 1);
    last = first + 1;
  }
  double sum = 0.0;
  for (std::size_t i = first; i < last; ++i) sum += curve[i].precision;
  return sum / static_cast<double>(last - first);
}

TopicComparison run_comparison(const ComparisonInput& input,
                               const ComparisonOptions& options,
                               const Stoplist& stoplist) {
  FixtureFetcher fetcher = FixtureFetcher::load(input.graph);
  const FixtureManifest& manifest = fetcher.manifest();

  TopicComparison out;
  out.topic = input.topic;
  if (out.topic.empty()) out.topic = manifest.topic;
  if (out.topic.empty()) out.topic = input.topic_dir.filename().string();
  out.seeds = options.seeds.empty() ? manifest.seeds : options.seeds;
  if (out.seeds.empty()) throw Error(ErrorCode::kNoSeeds, "no seeds for " + out.topic);

  out.table = build_topic_table(input.topic_dir, out.topic, options.table_capacity,
                                stoplist);

  CrawlConfig config;
  config.seeds = out.seeds;
  config.max_pages = options.max_pages;
  config.max_level = options.max_level;
  config.table_capacity = options.table_capacity;
  config.relevancy_limit = options.relevancy_limit;
  config.tunnel_relevant_links_to_frontier = options.tunnel_relevant_links_to_frontier;
  config.politeness_delay = std::chrono::milliseconds(0);

  config.mode = CrawlMode::kFocused;
  out.focused = run_focused(config, fetcher, out.table, stoplist);
  out.relevancy_limit = out.focused.relevancy_limit;

  // Same threshold for both so the curves are comparable.
  config.mode = CrawlMode::kBfs;
  config.relevancy_limit = out.relevancy_limit;
  out.bfs = run_bfs(config, fetcher, out.table, stoplist);

  out.focused_curve = precision_curve(out.focused.records);
  out.bfs_curve = precision_curve(out.bfs.records);

  out.labeled = !manifest.pages.empty();
  for (const FixturePage& p : manifest.pages) {
    if (!p.relevant_label) {
      out.labeled = false;
      break;
    }
  }
  if (out.labeled) {
    auto truth = [&](const std::string& url) { return fetcher.label(url).value_or(false); };
    out.focused_label_curve = precision_curve(out.focused.records, truth);
    out.bfs_label_curve = precision_curve(out.bfs.records, truth);
  }
  return out;
}

void write_curve_csv(std::ostream& out, const PrecisionCurve& curve,
                     const PrecisionCurve* label_curve) {
  out << "pages_downloaded,relevant_pages,precision,label_relevant_pages,label_precision\n";
  for (std::size_t i = 0; i < curve.size(); ++i) {
    const PrecisionPoint& p = curve[i];
    out << p.pages_downloaded << ',' << p.relevant_pages << ',' << fixed6(p.precision);
    if (label_curve && i < label_curve->size()) {
      out << ',' << (*label_curve)[i].relevant_pages << ','
          << fixed6((*label_curve)[i].precision);
    } else {
      out << ",NA,NA";
    }
    out << '\n';
  }
}

void write_summary_csv(std::ostream& out, std::span<const TopicComparison> rows) {
  out << "topic,focused_precision,bfs_precision,focused_label_precision,"
         "bfs_label_precision\n";
  for (const TopicComparison& r : rows) {
    out << r.topic << ',' << fixed6(final_precision(r.focused_curve)) << ','
        << fixed6(final_precision(r.bfs_curve)) << ',';
    if (r.labeled) {
      out << fixed6(final_precision(r.focused_label_curve)) << ','
          << fixed6(final_precision(r.bfs_label_curve));
    } else {
      out << "NA,NA";
    }
    out << '\n';
  }
}

void write_comparison_report(const std::filesystem::path& out_dir,
                             std::span<const TopicComparison> rows,
                             const ComparisonOptions& options) {
  std::filesystem::create_directories(out_dir);
  {
    std::ofstream out = open_out(out_dir / "summary.csv");
    write_summary_csv(out, rows);
  }

  nlohmann::ordered_json cfg;
  cfg["max_pages"] = options.max_pages;
  cfg["max_level"] = options.max_level;
  cfg["table_capacity"] = options.table_capacity;
  if (options.relevancy_limit) {
    cfg["relevancy_limit"] = *options.relevancy_limit;
  } else {
    cfg["relevancy_limit"] = "auto";
  }
  cfg["tunnel_relevant_links_to_frontier"] = options.tunnel_relevant_links_to_frontier;
  cfg["topics"] = nlohmann::ordered_json::array();
  for (const TopicComparison& r : rows) {
    nlohmann::ordered_json t;
    t["topic"] = r.topic;
    t["seeds"] = r.seeds;
    t["relevancy_limit"] = r.relevancy_limit;
    t["table_size"] = r.table.size();
    t["focused_pages"] = r.focused.records.size();
    t["bfs_pages"] = r.bfs.records.size();
    cfg["topics"].push_back(std::move(t));
  }
  {
    std::ofstream out = open_out(out_dir / "run_config.json");
    out << cfg.dump(2) << '\n';
  }

  for (const TopicComparison& r : rows) {
    const bool labeled = r.labeled;
    {
      std::ofstream out = open_out(out_dir / (r.topic + "_focused_run.csv"));
      write_records_csv(out, r.focused.records);
    }
    {
      std::ofstream out = open_out(out_dir / (r.topic + "_bfs_run.csv"));
      write_records_csv(out, r.bfs.records);
    }
    {
      std::ofstream out = open_out(out_dir / (r.topic + "_focused_curve.csv"));
      write_curve_csv(out, r.focused_curve, labeled ? &r.focused_label_curve : nullptr);
    }
    {
      std::ofstream out = open_out(out_dir / (r.topic + "_bfs_curve.csv"));
      write_curve_csv(out, r.bfs_curve, labeled ? &r.bfs_label_curve : nullptr);
    }
  }
}

}  // namespace focus
