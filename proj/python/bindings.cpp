#include <pybind11/numpy.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "ovc/bundle.hpp"
#include "ovc/config.hpp"
#include "ovc/detector.hpp"
#include "ovc/errors.hpp"
#include "ovc/nms.hpp"
#include "ovc/oracle.hpp"
#include "ovc/pipeline.hpp"
#include "ovc/sensor_sim.hpp"
#include "ovc/types.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace ovc;

namespace {

using ImageArray =
    py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;

Frame frame_from_array(const ImageArray& image) {
  if (image.ndim() != 2) {
    throw std::invalid_argument("expected a 2-D uint8 array (height, width)");
  }
  if (image.shape(0) > 0xFFFF || image.shape(1) > 0xFFFF) {
    throw std::invalid_argument("image dimensions exceed 65535");
  }
  Frame frame;
  frame.height = std::uint16_t(image.shape(0));
  frame.width = std::uint16_t(image.shape(1));
  frame.pixels.assign(image.data(), image.data() + frame.pixel_count());
  return frame;
}

py::array_t<std::uint8_t> array_from_frame(const Frame& frame) {
  py::array_t<std::uint8_t> out({int(frame.height), int(frame.width)});
  std::copy(frame.pixels.begin(), frame.pixels.end(), out.mutable_data());
  return out;
}

std::vector<std::uint8_t> ring_from_sequence(const std::vector<int>& ring) {
  if (ring.size() != 16) {
    throw std::invalid_argument("ring must have exactly 16 entries");
  }
  std::vector<std::uint8_t> out;
  out.reserve(16);
  for (int v : ring) {
    if (v < 0 || v > 255) {
      throw std::invalid_argument("ring intensities must be in [0, 255]");
    }
    out.push_back(std::uint8_t(v));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Vision front end: streaming AST corner detection with scored "
            "non-maximal suppression, a synchronized stereo+IMU simulator "
            "and DMA-style frame bundles.";

  py::register_exception<Error>(m, "OvcError");

  py::enum_<Polarity>(m, "Polarity")
      .value("NONE", Polarity::None)
      .value("BRIGHT", Polarity::Bright)
      .value("DARK", Polarity::Dark);

  py::enum_<SensorId>(m, "SensorId")
      .value("LEFT", SensorId::Left)
      .value("RIGHT", SensorId::Right);

  py::class_<Corner>(m, "Corner")
      .def(py::init([](int x, int y, int score, Polarity polarity) {
             Corner c;
             c.x = std::uint16_t(x);
             c.y = std::uint16_t(y);
             c.score = std::uint16_t(score);
             c.polarity = polarity;
             return c;
           }),
           "x"_a, "y"_a, "score"_a, "polarity"_a = Polarity::Bright)
      .def_readonly("x", &Corner::x)
      .def_readonly("y", &Corner::y)
      .def_readonly("score", &Corner::score)
      .def_readonly("polarity", &Corner::polarity)
      .def(py::self == py::self)
      .def("__repr__", [](const Corner& c) {
        return "Corner(x=" + std::to_string(c.x) + ", y=" +
               std::to_string(c.y) + ", score=" + std::to_string(c.score) +
               ", polarity=" + to_string(c.polarity) + ")";
      });

  py::class_<DetectorConfig>(m, "DetectorConfig")
      .def(py::init<int, int>(), "threshold"_a = 20, "lane_width"_a = 4)
      .def_property_readonly("threshold", &DetectorConfig::threshold)
      .def_property_readonly("lane_width", &DetectorConfig::lane_width)
      .def_readonly_static("RING_SIZE", &DetectorConfig::kRingSize)
      .def_readonly_static("MIN_ARC", &DetectorConfig::kMinArc)
      .def_readonly_static("WINDOW", &DetectorConfig::kWindow);

  m.def("make_config", &make_config, "threshold"_a = 20, "lane_width"_a = 4);

  m.def("ring_offsets", [] {
    std::vector<std::pair<int, int>> out;
    for (const RingOffset& o : ring_offsets()) out.emplace_back(o.dx, o.dy);
    return out;
  });

  m.def(
      "segment_test",
      [](int center, const std::vector<int>& ring, int threshold) {
        return segment_test(std::uint8_t(center), ring_from_sequence(ring),
                            threshold);
      },
      "center"_a, "ring"_a, "threshold"_a);

  m.def(
      "corner_score",
      [](int center, const std::vector<int>& ring) {
        const ScoreResult r =
            corner_score(std::uint8_t(center), ring_from_sequence(ring));
        return py::make_tuple(r.score, r.polarity);
      },
      "center"_a, "ring"_a);

  m.def(
      "oracle_score_by_sweep",
      [](int center, const std::vector<int>& ring) {
        return oracle_score_by_sweep(std::uint8_t(center),
                                     ring_from_sequence(ring));
      },
      "center"_a, "ring"_a);

  m.def(
      "detect_frame",
      [](const ImageArray& image, int threshold, int lane_width) {
        const Frame frame = frame_from_array(image);
        ScoreMap map;
        {
          py::gil_scoped_release release;
          map = detect_frame(frame, make_config(threshold, lane_width));
        }
        py::array_t<std::uint16_t> scores({int(map.height), int(map.width)});
        std::copy(map.score.begin(), map.score.end(), scores.mutable_data());
        py::array_t<std::uint8_t> polarity({int(map.height), int(map.width)});
        auto* p = polarity.mutable_data();
        for (std::size_t i = 0; i < map.polarity.size(); ++i) {
          p[i] = std::uint8_t(map.polarity[i]);
        }
        return py::make_tuple(scores, polarity);
      },
      "image"_a, "threshold"_a = 20, "lane_width"_a = 4,
      "Dense post-threshold candidate score map and polarity map.");

  m.def(
      "detect_corners",
      [](const ImageArray& image, int threshold, int lane_width) {
        const Frame frame = frame_from_array(image);
        std::vector<Corner> corners;
        {
          py::gil_scoped_release release;
          corners = detect_corners(frame, make_config(threshold, lane_width));
        }
        return corners;
      },
      "image"_a, "threshold"_a = 20, "lane_width"_a = 4,
      "Detector + 3x3 NMS, batch path.");

  m.def(
      "detect_corners_streaming",
      [](const ImageArray& image, int threshold, int lane_width) {
        const Frame frame = frame_from_array(image);
        std::vector<Corner> corners;
        {
          py::gil_scoped_release release;
          corners = detect_corners_streaming(
              frame, make_config(threshold, lane_width));
        }
        return corners;
      },
      "image"_a, "threshold"_a = 20, "lane_width"_a = 4,
      "Detector + 3x3 NMS through the lane-parallel streaming path.");

  m.def(
      "oracle_detect",
      [](const ImageArray& image, int threshold) {
        const Frame frame = frame_from_array(image);
        std::vector<Corner> corners;
        {
          py::gil_scoped_release release;
          corners = oracle_detect(frame, make_config(threshold, 1));
        }
        return corners;
      },
      "image"_a, "threshold"_a = 20,
      "Brute-force reference detector (slow, for verification).");

  m.def(
      "suppress_map",
      [](const py::array_t<std::uint16_t,
                           py::array::c_style | py::array::forcecast>& scores,
         const ImageArray& polarity) {
        if (scores.ndim() != 2 || polarity.ndim() != 2 ||
            scores.shape(0) != polarity.shape(0) ||
            scores.shape(1) != polarity.shape(1)) {
          throw std::invalid_argument(
              "score and polarity maps must be 2-D with equal shapes");
        }
        ScoreMap map;
        map.height = std::uint16_t(scores.shape(0));
        map.width = std::uint16_t(scores.shape(1));
        map.score.assign(scores.data(),
                         scores.data() + std::size_t(map.width) * map.height);
        map.polarity.resize(std::size_t(map.width) * map.height);
        for (std::size_t i = 0; i < map.polarity.size(); ++i) {
          map.polarity[i] = Polarity(polarity.data()[i]);
        }
        return suppress_map(map);
      },
      "scores"_a, "polarity"_a, "3x3 non-maximal suppression of a score map.");

  m.def(
      "encode_bundle",
      [](const ImageArray& image, const std::vector<Corner>& corners,
         SensorId sensor_id, std::uint64_t frame_id,
         std::uint64_t timestamp_ns) {
        Frame frame = frame_from_array(image);
        frame.sensor_id = sensor_id;
        frame.frame_id = frame_id;
        frame.timestamp_ns = timestamp_ns;
        const std::vector<std::uint8_t> bytes = encode_bundle(frame, corners);
        return py::bytes(reinterpret_cast<const char*>(bytes.data()),
                         bytes.size());
      },
      "image"_a, "corners"_a, "sensor_id"_a = SensorId::Left, "frame_id"_a = 0,
      "timestamp_ns"_a = 0,
      "Serialize header + pixels + trailing feature list.");

  m.def(
      "decode_bundle",
      [](const py::bytes& data) {
        const std::string_view view(data);
        const DecodedBundle bundle = decode_bundle(std::span(
            reinterpret_cast<const std::uint8_t*>(view.data()), view.size()));
        py::dict out;
        out["image"] = array_from_frame(bundle.frame);
        out["sensor_id"] = bundle.frame.sensor_id;
        out["frame_id"] = bundle.frame.frame_id;
        out["timestamp_ns"] = bundle.frame.timestamp_ns;
        out["corners"] = bundle.corners;
        return out;
      },
      "data"_a, "Inverse of encode_bundle.");

  m.attr("BUNDLE_MAGIC") = kBundleMagic;
  m.attr("BUNDLE_HEADER_SIZE") = kBundleHeaderSize;
  m.attr("FEATURE_RECORD_SIZE") = kFeatureRecordSize;

  py::class_<ImuSample>(m, "ImuSample")
      .def_readonly("timestamp_ns", &ImuSample::timestamp_ns)
      .def_readonly("accel", &ImuSample::accel)
      .def_readonly("gyro", &ImuSample::gyro)
      .def_readonly("seq", &ImuSample::seq);

  py::class_<Frame>(m, "Frame")
      .def_readonly("sensor_id", &Frame::sensor_id)
      .def_readonly("frame_id", &Frame::frame_id)
      .def_readonly("timestamp_ns", &Frame::timestamp_ns)
      .def_readonly("width", &Frame::width)
      .def_readonly("height", &Frame::height)
      .def_property_readonly("image", &array_from_frame);

  py::class_<FramePair>(m, "FramePair")
      .def_readonly("left", &FramePair::left)
      .def_readonly("right", &FramePair::right);

  py::class_<SensorRigConfig>(m, "SensorRigConfig")
      .def(py::init<>())
      .def_readwrite("width", &SensorRigConfig::width)
      .def_readwrite("height", &SensorRigConfig::height)
      .def_readwrite("frame_rate_hz", &SensorRigConfig::frame_rate_hz)
      .def_readwrite("imu_rate_hz", &SensorRigConfig::imu_rate_hz)
      .def_readwrite("seed", &SensorRigConfig::seed)
      .def_readwrite("motifs_per_frame", &SensorRigConfig::motifs_per_frame);

  py::class_<RateReport>(m, "RateReport")
      .def_readonly("ratio", &RateReport::ratio)
      .def_readonly("frame_period_ns", &RateReport::frame_period_ns)
      .def_readonly("imu_period_ns", &RateReport::imu_period_ns);

  m.def("frames_per_imu_window", &frames_per_imu_window, "config"_a);

  py::class_<SensorRig>(m, "SensorRig")
      .def(py::init<SensorRigConfig>(), "config"_a)
      .def("next_event", [](SensorRig& rig) -> py::object {
        auto event = rig.next_event();
        if (!event) return py::none();
        if (auto* imu = std::get_if<ImuSample>(&*event)) {
          return py::cast(*imu);
        }
        return py::cast(std::get<FramePair>(std::move(*event)));
      });

  m.def(
      "synth_image",
      [](std::uint64_t seed, int width, int height, int motifs) {
        Frame frame;
        frame.width = std::uint16_t(width);
        frame.height = std::uint16_t(height);
        frame.pixels = synth_pixels(seed, frame.width, frame.height,
                                    std::uint32_t(motifs));
        return array_from_frame(frame);
      },
      "seed"_a, "width"_a, "height"_a, "motifs"_a = 0,
      "Seeded noise image with injected 7x7 corner motifs.");

#ifdef OVC_VERSION
  m.attr("__version__") = OVC_VERSION;
#else
  m.attr("__version__") = "dev";
#endif
}
