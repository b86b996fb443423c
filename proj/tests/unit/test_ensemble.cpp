#include <filesystem>
#include <set>
#include <sstream>

#include <gtest/gtest.h>

#include "rspdc/ensemble/campaign.hpp"
#include "rspdc/ensemble/io.hpp"
#include "rspdc/ensemble/seed.hpp"
#include "rspdc/ensemble/selection.hpp"
#include "rspdc/errors.hpp"
#include "rspdc/units.hpp"

using namespace rspdc;
using namespace rspdc::ensemble;

namespace {

EnsembleConfig small_config() {
  EnsembleConfig c;
  c.master_seed = 11;
  c.count = 12;
  c.theta_rad = {0.0, deg_to_rad(30.0)};
  c.bootstrap_samples = 20;
  return c;
}

std::string bytes(EnsembleReport r) {
  r.config.workers = 1;
  r.config.first = 0;
  r.config.last = 0;
  std::ostringstream out;
  out << report_to_json(r).dump();
  write_records_jsonl(r, out);
  return out.str();
}

}  // namespace

TEST(Seed, DerivedSeedsAreStableAndDistinct) {
  EXPECT_EQ(derive_seed(1, 5), derive_seed(1, 5));
  std::set<std::uint64_t> seen;
  for (std::uint64_t m = 0; m < 4; ++m) {
    for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(m, i));
  }
  EXPECT_EQ(seen.size(), 4000u);
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0x9E3779B97F4A7C15ULL), 0xe220a8397b1dcdafULL);
}

TEST(Campaign, EvaluateStructureIsDeterministic) {
  const auto c = small_config();
  EXPECT_EQ(record_to_json(evaluate_structure(c, 250, 3)), record_to_json(evaluate_structure(c, 250, 3)));
}

TEST(Campaign, ShardsMergeToTheSingleRun) {
  const auto c = small_config();
  const auto whole = run_campaign(c);
  auto a = c;
  a.last = 5;
  auto b = c;
  b.first = 5;
  b.workers = 3;
  const auto merged = merge_reports(run_campaign(b), run_campaign(a));
  EXPECT_EQ(bytes(merged), bytes(whole));
  auto threaded = c;
  threaded.workers = 4;
  EXPECT_EQ(bytes(run_campaign(threaded)), bytes(whole));
}

TEST(Campaign, MergeRejectsDifferentConfigurations) {
  auto a = small_config();
  a.count = 2;
  auto b = a;
  b.master_seed = 12;
  EXPECT_THROW(merge_reports(run_campaign(a), run_campaign(b)), ValidationError);
}

TEST(Campaign, HistogramCountsMatchPeaks) {
  const auto r = run_campaign(small_config());
  ASSERT_EQ(r.cells.size(), 2u);
  for (const auto& cell : r.cells) {
    std::size_t total = 0;
    for (auto n : cell.counts) total += n;
    EXPECT_EQ(total, cell.peaks);
    EXPECT_EQ(cell.structures, 12u);
    EXPECT_GT(cell.median_fwhm_nm, 0.0);
  }
}

TEST(Campaign, ValidateRejectsBadConfig) {
  auto c = small_config();
  c.count = 0;
  EXPECT_THROW(c.validate(), ValidationError);
  c = small_config();
  c.first = 10;
  c.last = 4;
  EXPECT_THROW(c.validate(), ValidationError);
}

TEST(Campaign, DigestIgnoresShardAndWorkers) {
  auto a = small_config();
  auto b = a;
  b.first = 3;
  b.workers = 8;
  EXPECT_EQ(a.digest(), b.digest());
  b.master_seed = 99;
  EXPECT_NE(a.digest(), b.digest());
}

TEST(Io, CampaignDirectoryRoundTrip) {
  const auto r = run_campaign(small_config());
  const auto dir = std::filesystem::temp_directory_path() / "rspdc_unit_campaign";
  std::filesystem::remove_all(dir);
  write_campaign(r, dir.string());
  EXPECT_EQ(bytes(read_campaign(dir.string())), bytes(r));
  std::filesystem::remove_all(dir);
}

TEST(Selection, PinholeSpacingIsWholeGridSteps) {
  optics::Peak p;
  p.omega_c = 1.9;
  p.fwhm_omega = 7.3e-7;
  const auto layout = pinhole_layout(p);
  const double steps = layout.delta_omega / layout.grid.signal.step;
  EXPECT_NEAR(steps, std::round(steps), 1e-9);
  EXPECT_NEAR(layout.delta_omega / p.fwhm_omega, 4.0, 0.1);
  EXPECT_EQ(layout.grid.signal.count, 256u);
}
