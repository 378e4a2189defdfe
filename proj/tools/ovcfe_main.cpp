// ovcfe: command line driver for the vision front end. Subcommands cover
// single-image detection, stream simulation, oracle verification, throughput
// benchmarking, bundle inspection and synthetic image generation.

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "ovc/bundle.hpp"
#include "ovc/errors.hpp"
#include "ovc/oracle.hpp"
#include "ovc/pgm.hpp"
#include "ovc/pipeline.hpp"
#include "ovc/ring_channel.hpp"
#include "ovc/rng.hpp"
#include "ovc/sensor_sim.hpp"

namespace {

using namespace ovc;

// OVC_LOG: error | warn | info | debug (or 0..3). Default warn.
int log_level() {
  static const int level = [] {
    const char* env = std::getenv("OVC_LOG");
    if (!env) return 1;
    const std::string v(env);
    if (v == "error" || v == "0") return 0;
    if (v == "warn" || v == "1") return 1;
    if (v == "info" || v == "2") return 2;
    if (v == "debug" || v == "3") return 3;
    return 1;
  }();
  return level;
}

void log_info(const std::string& msg) {
  if (log_level() >= 2) std::cerr << "[info] " << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= 3) std::cerr << "[debug] " << msg << "\n";
}

struct Size {
  std::uint16_t width = 0;
  std::uint16_t height = 0;
};

std::vector<Size> parse_sizes(const std::string& text) {
  std::vector<Size> sizes;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto xpos = item.find('x');
    if (xpos == std::string::npos) {
      throw std::invalid_argument("size '" + item + "' is not WxH");
    }
    Size s;
    s.width = std::uint16_t(std::stoul(item.substr(0, xpos)));
    s.height = std::uint16_t(std::stoul(item.substr(xpos + 1)));
    sizes.push_back(s);
  }
  if (sizes.empty()) throw std::invalid_argument("empty size list");
  return sizes;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) values.push_back(std::stoi(item));
  if (values.empty()) throw std::invalid_argument("empty list");
  return values;
}

void write_corners(std::ostream& out, const std::vector<Corner>& corners,
                   const std::string& format) {
  if (format == "csv") {
    out << "x,y,score,polarity\n";
    for (const Corner& c : corners) {
      out << c.x << ',' << c.y << ',' << c.score << ','
          << to_string(c.polarity) << '\n';
    }
  } else {
    for (const Corner& c : corners) {
      out << "{\"x\":" << c.x << ",\"y\":" << c.y << ",\"score\":" << c.score
          << ",\"polarity\":\"" << to_string(c.polarity) << "\"}\n";
    }
  }
}

void print_report(const RunReport& report) {
  std::cout << "frame_pairs:      " << report.frames_processed << "\n"
            << "imu_samples:      " << report.imu_samples << "\n"
            << "corners_total:    " << report.corners_total << "\n"
            << "bundles_consumed: " << report.bundles_consumed << "\n"
            << "drops:            " << report.drops << "\n"
            << "wall_time_s:      " << report.wall_time_s << "\n"
            << "pairs_per_second: " << report.frames_per_second << "\n"
            << "stage_seconds:    detector " << report.stages.detector_s
            << " | nms " << report.stages.nms_s << " | transport "
            << report.stages.transport_s << "\n";
}

// ---------------------------------------------------------------------------
// detect

struct DetectArgs {
  std::string image_path;
  int threshold = 20;
  int lanes = 4;
  std::string out_path;
  std::string format = "csv";
  std::string bundle_path;
  std::string score_map_path;
};

int cmd_detect(const DetectArgs& args) {
  const DetectorConfig config = make_config(args.threshold, args.lanes);
  Frame frame = read_pgm(args.image_path);
  validate_frame(frame);
  log_info("detect " + args.image_path + " (" + std::to_string(frame.width) +
           "x" + std::to_string(frame.height) + ")");

  const std::vector<Corner> corners = detect_corners(frame, config);

  if (args.out_path.empty()) {
    write_corners(std::cout, corners, args.format);
  } else {
    std::ofstream out(args.out_path);
    if (!out) {
      throw Error(ErrorCode::FileNotFound,
                  args.out_path + ": cannot open for writing");
    }
    write_corners(out, corners, args.format);
  }

  if (!args.bundle_path.empty()) {
    const std::vector<std::uint8_t> bytes = encode_bundle(frame, corners);
    std::ofstream out(args.bundle_path, std::ios::binary);
    if (!out) {
      throw Error(ErrorCode::FileNotFound,
                  args.bundle_path + ": cannot open for writing");
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              std::streamsize(bytes.size()));
  }

  if (!args.score_map_path.empty()) {
    const ScoreMap map = detect_frame(frame, config);
    Frame dump;
    dump.width = map.width;
    dump.height = map.height;
    dump.pixels.resize(dump.pixel_count());
    for (std::size_t i = 0; i < dump.pixels.size(); ++i) {
      dump.pixels[i] = std::uint8_t(std::min<std::uint16_t>(map.score[i], 255));
    }
    write_pgm(args.score_map_path, dump);
  }

  std::cerr << corners.size() << " corners\n";
  return 0;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
  std::uint64_t seed = 7;
  std::uint32_t trials = 100;
  std::string sizes = "16x16,64x64,257x129";
  std::string thresholds = "0,10,20,60";
  std::string lanes = "1,2,4,8";
  bool inject_fault = false;  // test fixture: prove the harness catches bugs
};

int cmd_verify(const VerifyArgs& args) {
  const std::vector<Size> sizes = parse_sizes(args.sizes);
  const std::vector<int> thresholds = parse_int_list(args.thresholds);
  const std::vector<int> lanes = parse_int_list(args.lanes);

  if (args.trials == 0) {
    std::cerr << "warning: 0 trials requested, trivially passing\n";
    return 0;
  }

  std::uint64_t mismatches = 0;
  std::uint64_t runs = 0;
  for (const Size& size : sizes) {
    for (const int threshold : thresholds) {
      for (std::uint32_t trial = 0; trial < args.trials; ++trial) {
        const std::uint64_t frame_seed = args.seed + trial;
        Frame frame;
        frame.width = size.width;
        frame.height = size.height;
        frame.pixels = synth_pixels(frame_seed, size.width, size.height,
                                    std::uint32_t(frame_seed % 8));
        const std::vector<Corner> expected =
            oracle_detect(frame, make_config(threshold, 1));
        for (const int lane : lanes) {
          std::vector<Corner> got = detect_corners_streaming(
              frame, make_config(threshold, lane));
          ++runs;
          if (args.inject_fault && runs == 1) {
            got.push_back(Corner{3, 3, 1, Polarity::Bright});
          }
          if (got != expected) {
            ++mismatches;
            std::cerr << "MISMATCH: streaming != oracle ("
                      << got.size() << " vs " << expected.size()
                      << " corners)\n"
                      << "reproduce: ovcfe verify --seed " << frame_seed
                      << " --trials 1 --sizes " << size.width << "x"
                      << size.height << " --thresholds " << threshold
                      << " --lanes " << lane << "\n";
          }
        }
      }
    }
  }

  std::cout << "verified " << runs << " streaming runs against the oracle: "
            << (mismatches == 0 ? "OK" : std::to_string(mismatches) +
                                             " mismatches")
            << "\n";
  return mismatches == 0 ? 0 : 1;
}

// ---------------------------------------------------------------------------
// stream

struct StreamArgs {
  double duration_s = 5.0;
  std::uint64_t seed = 7;
  std::uint16_t width = 1280;
  std::uint16_t height = 1024;
  std::uint32_t frame_rate = 20;
  std::uint32_t imu_rate = 200;
  std::uint32_t motifs = 20;
  int threshold = 20;
  int lanes = 4;
  std::size_t ring_capacity = 4;
  bool realtime = false;
  std::string images;  // comma separated PGM sequence
  bool loop = false;
  std::string save_bundles_dir;
};

int cmd_stream(const StreamArgs& args) {
  const DetectorConfig detector_config = make_config(args.threshold, args.lanes);

  SensorRigConfig rig_config;
  rig_config.width = args.width;
  rig_config.height = args.height;
  rig_config.frame_rate_hz = args.frame_rate;
  rig_config.imu_rate_hz = args.imu_rate;
  rig_config.seed = args.seed;
  rig_config.motifs_per_frame = args.motifs;
  if (!args.images.empty()) {
    ImageSequenceSource source;
    std::stringstream ss(args.images);
    std::string item;
    while (std::getline(ss, item, ',')) source.paths.push_back(item);
    source.loop = args.loop;
    rig_config.source = std::move(source);
  }

  SensorRig rig(rig_config);
  RingChannel<std::vector<std::uint8_t>> channel(args.ring_capacity);

  if (!args.save_bundles_dir.empty()) {
    std::filesystem::create_directories(args.save_bundles_dir);
  }

  // Consumer side of the DMA model: drain, decode, account.
  std::atomic<std::uint64_t> bundles_consumed{0};
  std::atomic<std::uint64_t> corners_consumed{0};
  std::atomic<bool> decode_ok{true};
  std::thread consumer([&] {
    while (auto bytes = channel.pop_wait()) {
      try {
        const DecodedBundle bundle = decode_bundle(*bytes);
        corners_consumed += bundle.corners.size();
        if (!args.save_bundles_dir.empty()) {
          const std::string name =
              "bundle_" + std::to_string(bundle.frame.frame_id) + "_" +
              (bundle.frame.sensor_id == SensorId::Left ? "L" : "R") + ".ovcb";
          std::ofstream out(
              std::filesystem::path(args.save_bundles_dir) / name,
              std::ios::binary);
          out.write(reinterpret_cast<const char*>(bytes->data()),
                    std::streamsize(bytes->size()));
        }
      } catch (const std::exception& e) {
        decode_ok = false;
        std::cerr << "consumer decode error: " << e.what() << "\n";
      }
      ++bundles_consumed;
    }
  });

  const std::uint64_t duration_ns =
      std::uint64_t(args.duration_s * 1e9);
  RunReport report;
  bool sync_ok = true;
  std::uint64_t prev_ts = 0;
  bool have_prev = false;

  std::optional<FrontEnd> left;
  std::optional<FrontEnd> right;
  std::uint16_t left_width = 0;
  std::uint16_t left_height = 0;
  const auto wall_start = std::chrono::steady_clock::now();

  while (true) {
    auto event = rig.next_event();
    if (!event) {
      log_info("image sequence exhausted");
      break;
    }
    const std::uint64_t ts = event_timestamp(*event);
    if (ts >= duration_ns) break;

    if (have_prev && ts < prev_ts) {
      sync_ok = false;
      std::cerr << "timestamp regression at " << ts << "\n";
    }
    prev_ts = ts;
    have_prev = true;

    if (args.realtime) {
      std::this_thread::sleep_until(wall_start + std::chrono::nanoseconds(ts));
    }

    if (const auto* imu = std::get_if<ImuSample>(&*event)) {
      (void)imu;
      ++report.imu_samples;
      continue;
    }

    const FramePair& pair = std::get<FramePair>(*event);
    if (pair.left.timestamp_ns != pair.right.timestamp_ns ||
        pair.left.frame_id != pair.right.frame_id) {
      sync_ok = false;
      std::cerr << "pair desync at frame " << pair.left.frame_id << "\n";
    }
    // Sequence files may change resolution between frames.
    if (!left || left_width != pair.left.width ||
        left_height != pair.left.height) {
      left.emplace(pair.left.width, pair.left.height, detector_config);
      right.emplace(pair.right.width, pair.right.height, detector_config);
      left_width = pair.left.width;
      left_height = pair.left.height;
    }
    channel.push(left->process_encode(pair.left));
    report.corners_total += left->last_corners().size();
    channel.push(right->process_encode(pair.right));
    report.corners_total += right->last_corners().size();
    ++report.frames_processed;
    log_debug("frame " + std::to_string(pair.left.frame_id) + " at " +
              std::to_string(ts) + " ns");
  }

  channel.close();
  consumer.join();

  report.wall_time_s = std::chrono::duration<double>(
                           std::chrono::steady_clock::now() - wall_start)
                           .count();
  report.frames_per_second =
      report.wall_time_s > 0.0
          ? double(report.frames_processed) / report.wall_time_s
          : 0.0;
  report.bundles_consumed = bundles_consumed;
  report.drops = channel.drop_count();
  if (left) {
    report.stages.detector_s =
        left->timings().detector_s + right->timings().detector_s;
    report.stages.nms_s = left->timings().nms_s + right->timings().nms_s;
    report.stages.transport_s =
        left->timings().transport_s + right->timings().transport_s;
  }

  print_report(report);
  std::cout << "corners_consumed: " << corners_consumed << "\n"
            << "sync:             " << (sync_ok ? "ok" : "VIOLATED") << "\n";
  return (sync_ok && decode_ok) ? 0 : 1;
}

// ---------------------------------------------------------------------------
// bench

struct BenchArgs {
  std::uint32_t frames = 200;
  int threshold = 20;
  int lanes = 4;
  std::uint64_t seed = 7;
  std::uint16_t width = 1280;
  std::uint16_t height = 1024;
  std::uint32_t motifs = 20;
  std::string image_path;
};

int cmd_bench(const BenchArgs& args) {
  BenchOptions options;
  options.width = args.width;
  options.height = args.height;
  options.seed = args.seed;
  options.motifs = args.motifs;
  options.frames = args.frames;
  options.config = make_config(args.threshold, args.lanes);
  if (!args.image_path.empty()) {
    Frame frame = read_pgm(args.image_path);
    validate_frame(frame);
    options.image = std::move(frame);
  }

  const RunReport report = run_bench(options);
  print_report(report);
  return 0;
}

// ---------------------------------------------------------------------------
// inspect

struct InspectArgs {
  std::string bundle_path;
  std::uint32_t max_corners = 10;
};

int cmd_inspect(const InspectArgs& args) {
  std::ifstream in(args.bundle_path, std::ios::binary);
  if (!in) {
    throw Error(ErrorCode::FileNotFound, args.bundle_path);
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  const DecodedBundle bundle = decode_bundle(bytes);

  std::cout << "sensor:       " << to_string(bundle.frame.sensor_id) << "\n"
            << "frame_id:     " << bundle.frame.frame_id << "\n"
            << "timestamp_ns: " << bundle.frame.timestamp_ns << "\n"
            << "size:         " << bundle.frame.width << "x"
            << bundle.frame.height << "\n"
            << "features:     " << bundle.corners.size() << "\n";
  const std::uint32_t shown =
      std::min<std::uint32_t>(args.max_corners,
                              std::uint32_t(bundle.corners.size()));
  for (std::uint32_t i = 0; i < shown; ++i) {
    const Corner& c = bundle.corners[i];
    std::cout << "  (" << c.x << ", " << c.y << ") score " << c.score << " "
              << to_string(c.polarity) << "\n";
  }
  if (shown < bundle.corners.size()) {
    std::cout << "  ... " << (bundle.corners.size() - shown) << " more\n";
  }
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  std::string out_path;
  std::uint64_t seed = 7;
  std::uint16_t width = 1280;
  std::uint16_t height = 1024;
  std::uint32_t motifs = 20;
};

int cmd_synth(const SynthArgs& args) {
  Frame frame;
  frame.width = args.width;
  frame.height = args.height;
  frame.pixels = synth_pixels(args.seed, args.width, args.height, args.motifs);
  write_pgm(args.out_path, frame);
  std::cerr << "wrote " << args.out_path << " (" << args.width << "x"
            << args.height << ", " << args.motifs << " motifs)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"OVC vision front end: streaming AST corner detection, "
               "synchronized sensor simulation and DMA-style frame bundles"};
  app.require_subcommand(1);

  DetectArgs detect_args;
  auto* detect = app.add_subcommand(
      "detect", "Detect corners in a PGM image and write them as CSV/JSONL");
  detect->add_option("image", detect_args.image_path, "input PGM (P5) image")
      ->required();
  detect->add_option("--threshold", detect_args.threshold,
                     "contrast threshold [0, 254]");
  detect->add_option("--lanes", detect_args.lanes, "lane width {1,2,4,8}");
  detect->add_option("--out", detect_args.out_path,
                     "output file (default stdout)");
  detect->add_option("--format", detect_args.format, "csv or jsonl")
      ->check(CLI::IsMember({"csv", "jsonl"}));
  detect->add_option("--bundle", detect_args.bundle_path,
                     "also write a .ovcb frame bundle");
  detect->add_option("--dump-score-map", detect_args.score_map_path,
                     "write the pre-NMS score map as a PGM");

  VerifyArgs verify_args;
  auto* verify = app.add_subcommand(
      "verify", "Cross-check the streaming pipeline against the brute-force "
                "oracle on seeded random frames");
  verify->add_option("--seed", verify_args.seed, "base seed");
  verify->add_option("--trials", verify_args.trials, "frames per size");
  verify->add_option("--sizes", verify_args.sizes, "comma list of WxH");
  verify->add_option("--thresholds", verify_args.thresholds,
                     "comma list of thresholds");
  verify->add_option("--lanes", verify_args.lanes, "comma list of lane widths");
  verify->add_flag("--inject-fault", verify_args.inject_fault)->group("");

  StreamArgs stream_args;
  auto* stream = app.add_subcommand(
      "stream", "Run the simulated rig through the full pipeline");
  stream->add_option("--duration-s", stream_args.duration_s,
                     "simulated seconds");
  stream->add_option("--seed", stream_args.seed, "rig seed");
  stream->add_option("--width", stream_args.width, "frame width");
  stream->add_option("--height", stream_args.height, "frame height");
  stream->add_option("--frame-rate", stream_args.frame_rate, "pairs per second");
  stream->add_option("--imu-rate", stream_args.imu_rate, "samples per second");
  stream->add_option("--motifs", stream_args.motifs,
                     "corner motifs per synthetic frame");
  stream->add_option("--threshold", stream_args.threshold, "contrast threshold");
  stream->add_option("--lanes", stream_args.lanes, "lane width {1,2,4,8}");
  stream->add_option("--ring-capacity", stream_args.ring_capacity,
                     "bundle slots in the DMA ring");
  stream->add_flag("--realtime", stream_args.realtime,
                   "throttle to wall clock");
  stream->add_option("--images", stream_args.images,
                     "comma list of PGM files (image-sequence mode)");
  stream->add_flag("--loop", stream_args.loop, "loop the image sequence");
  stream->add_option("--save-bundles", stream_args.save_bundles_dir,
                     "write consumed bundles into this directory");

  BenchArgs bench_args;
  auto* bench = app.add_subcommand(
      "bench", "Measure sustained detector+nms+encode throughput");
  bench->add_option("--frames", bench_args.frames, "stereo pairs to process");
  bench->add_option("--threshold", bench_args.threshold, "contrast threshold");
  bench->add_option("--lanes", bench_args.lanes, "lane width {1,2,4,8}");
  bench->add_option("--seed", bench_args.seed, "content seed");
  bench->add_option("--width", bench_args.width, "frame width");
  bench->add_option("--height", bench_args.height, "frame height");
  bench->add_option("--motifs", bench_args.motifs, "motifs per frame");
  bench->add_option("--image", bench_args.image_path,
                    "use this PGM instead of synthetic frames");

  InspectArgs inspect_args;
  auto* inspect =
      app.add_subcommand("inspect", "Print the header and features of a "
                                    ".ovcb frame bundle");
  inspect->add_option("bundle", inspect_args.bundle_path, "bundle file")
      ->required();
  inspect->add_option("--corners", inspect_args.max_corners,
                      "max corners to print");

  SynthArgs synth_args;
  auto* synth = app.add_subcommand(
      "synth", "Write a synthetic noise+motif test image as PGM");
  synth->add_option("--out", synth_args.out_path, "output PGM path")
      ->required();
  synth->add_option("--seed", synth_args.seed, "content seed");
  synth->add_option("--width", synth_args.width, "frame width");
  synth->add_option("--height", synth_args.height, "frame height");
  synth->add_option("--motifs", synth_args.motifs, "corner motifs to inject");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*detect) return cmd_detect(detect_args);
    if (*verify) return cmd_verify(verify_args);
    if (*stream) return cmd_stream(stream_args);
    if (*bench) return cmd_bench(bench_args);
    if (*inspect) return cmd_inspect(inspect_args);
    if (*synth) return cmd_synth(synth_args);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
