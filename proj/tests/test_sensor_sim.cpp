#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <vector>

#include "doctest.h"
#include "ovc/errors.hpp"
#include "ovc/pgm.hpp"
#include "ovc/sensor_sim.hpp"
#include "test_util.hpp"

using namespace ovc;
using ovc::testing::check_error;

namespace {

SensorRigConfig small_rig(std::uint64_t seed = 7) {
  SensorRigConfig config;
  config.width = 32;
  config.height = 24;
  config.seed = seed;
  config.motifs_per_frame = 2;
  return config;
}

std::vector<SensorEvent> pull_until(SensorRig& rig, std::uint64_t limit_ns) {
  std::vector<SensorEvent> events;
  while (true) {
    auto event = rig.next_event();
    REQUIRE(event.has_value());
    if (event_timestamp(*event) >= limit_ns) break;
    events.push_back(std::move(*event));
  }
  return events;
}

}  // namespace

TEST_SUITE("sensor_sim") {

TEST_CASE("rate report at the flight rates") {
  SensorRigConfig config;  // defaults: 20 Hz frames, 200 Hz IMU
  const RateReport report = frames_per_imu_window(config);
  CHECK(report.ratio == 10);
  CHECK(report.frame_period_ns == 50'000'000);
  CHECK(report.imu_period_ns == 5'000'000);
}

TEST_CASE("rate report degenerate and non-default ratios") {
  SensorRigConfig equal;
  equal.frame_rate_hz = 20;
  equal.imu_rate_hz = 20;
  CHECK(frames_per_imu_window(equal).ratio == 1);

  SensorRigConfig eight;
  eight.frame_rate_hz = 25;
  eight.imu_rate_hz = 200;
  const RateReport report = frames_per_imu_window(eight);
  CHECK(report.ratio == 8);
  CHECK(report.frame_period_ns == 40'000'000);
}

TEST_CASE("non-multiple rates are rejected") {
  SensorRigConfig config = small_rig();
  config.frame_rate_hz = 20;
  config.imu_rate_hz = 190;
  check_error([&] { frames_per_imu_window(config); },
              ErrorCode::BadRateRatio);
  check_error([&] { SensorRig rig(config); }, ErrorCode::BadRateRatio);
}

TEST_CASE("first event is the IMU sample at t = 0") {
  SensorRig rig = open_rig(small_rig());
  const auto first = rig.next_event();
  REQUIRE(first.has_value());
  const auto* imu = std::get_if<ImuSample>(&*first);
  REQUIRE(imu != nullptr);
  CHECK(imu->timestamp_ns == 0);
  CHECK(imu->seq == 0);

  // The coincident frame pair follows immediately.
  const auto second = rig.next_event();
  const auto* pair = std::get_if<FramePair>(&*second);
  REQUIRE(pair != nullptr);
  CHECK(pair->left.timestamp_ns == 0);
  CHECK(pair->left.frame_id == 0);
}

TEST_CASE("frame 3 triggers at 150 ms") {
  SensorRig rig(small_rig());
  std::uint64_t frames_seen = 0;
  while (true) {
    const auto event = rig.next_event();
    if (const auto* pair = std::get_if<FramePair>(&*event)) {
      if (pair->left.frame_id == 3) {
        CHECK(pair->left.timestamp_ns == 150'000'000);
        break;
      }
      ++frames_seen;
      REQUIRE(frames_seen < 10);
    }
  }
}

TEST_CASE("exactly ten IMU samples between consecutive triggers") {
  SensorRig rig(small_rig());
  const auto events = pull_until(rig, 2'000'000'000);  // 2 s
  std::vector<std::uint64_t> triggers;
  for (const auto& e : events) {
    if (std::holds_alternative<FramePair>(e)) {
      triggers.push_back(event_timestamp(e));
    }
  }
  REQUIRE(triggers.size() == 40);
  for (std::size_t k = 0; k + 1 < triggers.size(); ++k) {
    int imu_in_window = 0;
    for (const auto& e : events) {
      if (std::holds_alternative<ImuSample>(e)) {
        const std::uint64_t ts = event_timestamp(e);
        if (ts >= triggers[k] && ts < triggers[k + 1]) ++imu_in_window;
      }
    }
    CHECK(imu_in_window == 10);
  }
}

TEST_CASE("merged stream is monotonic with synchronized pairs") {
  SensorRig rig(small_rig(13));
  std::uint64_t prev = 0;
  std::uint64_t prev_imu_ts = 0;
  std::uint64_t next_imu_seq = 0;
  for (int i = 0; i < 500; ++i) {
    const auto event = rig.next_event();
    const std::uint64_t ts = event_timestamp(*event);
    CHECK(ts >= prev);
    prev = ts;
    if (const auto* imu = std::get_if<ImuSample>(&*event)) {
      // Strictly increasing timestamps along the IMU stream, gapless seq.
      CHECK(imu->seq == next_imu_seq);
      if (next_imu_seq > 0) CHECK(imu->timestamp_ns > prev_imu_ts);
      prev_imu_ts = imu->timestamp_ns;
      ++next_imu_seq;
    }
    if (const auto* pair = std::get_if<FramePair>(&*event)) {
      CHECK(pair->left.timestamp_ns == pair->right.timestamp_ns);
      CHECK(pair->left.frame_id == pair->right.frame_id);
      CHECK(pair->left.sensor_id == SensorId::Left);
      CHECK(pair->right.sensor_id == SensorId::Right);
      CHECK(pair->left.pixels != pair->right.pixels);  // distinct content
    }
  }
}

TEST_CASE("identical seeds give identical event streams") {
  SensorRig a(small_rig(99));
  SensorRig b(small_rig(99));
  for (int i = 0; i < 300; ++i) {
    const auto ea = a.next_event();
    const auto eb = b.next_event();
    REQUIRE(ea->index() == eb->index());
    CHECK(event_timestamp(*ea) == event_timestamp(*eb));
    if (const auto* pa = std::get_if<FramePair>(&*ea)) {
      const auto& pb = std::get<FramePair>(*eb);
      CHECK(pa->left.pixels == pb.left.pixels);
      CHECK(pa->right.pixels == pb.right.pixels);
    } else {
      const auto& ia = std::get<ImuSample>(*ea);
      const auto& ib = std::get<ImuSample>(*eb);
      CHECK(ia.accel == ib.accel);
      CHECK(ia.gyro == ib.gyro);
      CHECK(ia.seq == ib.seq);
    }
  }

  // A different seed changes the bytes.
  SensorRig c(small_rig(100));
  SensorRig d(small_rig(99));
  c.next_event();
  d.next_event();
  const auto ec = c.next_event();
  const auto ed = d.next_event();
  CHECK(std::get<FramePair>(*ec).left.pixels !=
        std::get<FramePair>(*ed).left.pixels);
}

TEST_CASE("image sequence mode cycles files and ends cleanly") {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("ovc_seq_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  const Frame img_a = testing::noise_frame(1, 16, 12);
  const Frame img_b = testing::noise_frame(2, 16, 12);
  write_pgm((dir / "a.pgm").string(), img_a);
  write_pgm((dir / "b.pgm").string(), img_b);

  SensorRigConfig config = small_rig();
  ImageSequenceSource source;
  source.paths = {(dir / "a.pgm").string(), (dir / "b.pgm").string()};
  source.loop = false;
  config.source = source;

  SensorRig rig(config);
  std::vector<Frame> lefts;
  while (auto event = rig.next_event()) {
    if (const auto* pair = std::get_if<FramePair>(&*event)) {
      lefts.push_back(pair->left);
      CHECK(pair->left.pixels == pair->right.pixels);  // same file, both eyes
    }
  }
  REQUIRE(lefts.size() == 2);  // sequence exhausted, looping disabled
  CHECK(lefts[0].pixels == img_a.pixels);
  CHECK(lefts[1].pixels == img_b.pixels);

  // With looping the sequence repeats.
  source.loop = true;
  config.source = source;
  SensorRig looping(config);
  int pairs = 0;
  while (pairs < 5) {
    const auto event = looping.next_event();
    REQUIRE(event.has_value());
    if (const auto* pair = std::get_if<FramePair>(&*event)) {
      const Frame& expect = (pairs % 2 == 0) ? img_a : img_b;
      CHECK(pair->left.pixels == expect.pixels);
      ++pairs;
    }
  }

  fs::remove_all(dir);
}

TEST_CASE("sequence mode rejects missing and undersized files") {
  SensorRigConfig config = small_rig();
  ImageSequenceSource missing;
  missing.paths = {"/nonexistent/frame.pgm"};
  config.source = missing;
  check_error([&] { SensorRig rig(config); }, ErrorCode::FileNotFound);

  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("ovc_small_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  write_pgm((dir / "good.pgm").string(), testing::noise_frame(1, 16, 12));
  {
    std::ofstream out(dir / "tiny.pgm", std::ios::binary);
    out << "P5\n6 6\n255\n" << std::string(36, 'x');
  }
  ImageSequenceSource tiny;
  tiny.paths = {(dir / "good.pgm").string(), (dir / "tiny.pgm").string()};
  config.source = tiny;
  check_error([&] { SensorRig rig(config); }, ErrorCode::DimensionTooSmall);
  fs::remove_all(dir);
}

TEST_CASE("synthetic IMU carries gravity on z") {
  SensorRig rig(small_rig());
  const auto event = rig.next_event();
  const auto& imu = std::get<ImuSample>(*event);
  CHECK(imu.accel[2] > 9.7);
  CHECK(imu.accel[2] < 9.9);
  CHECK(std::abs(imu.gyro[0]) < 0.02);
}

}  // TEST_SUITE
