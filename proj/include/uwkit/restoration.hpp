#pragma once

#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "uwkit/background_light.hpp"
#include "uwkit/transmission.hpp"

namespace uwkit {

/// J = (I - B) / max(t, t_floor) + B per channel, clamped to [0,1].
ImageRGB recover_radiance(const ImageRGB& img, const Rgb& bl, const TransmissionMaps& tm, double t_floor);

/// One post-processing stage run on the restored image (e.g. an enhancer).
using PostStage = std::function<ImageRGB(const ImageRGB&)>;

struct RestorationPipeline {
  std::string name;
  BlMethod bl_method = BlMethod::DcpBrightest;
  TmMethod tm_method = TmMethod::Dcp;
  bool refine = true;
  GuidedFilterParams refine_params{};
  double t_floor = 0.1;
  PostStage post;  // empty = off

  void validate() const;
};

/// Named pipelines of the compared restoration methods:
/// sir, rir, iuid, teoui, nom, rcp, ibla, ulap.
RestorationPipeline named_pipeline(std::string_view name);
const std::vector<std::string>& pipeline_names();

/// Replaces estimated intermediates with known ones (oracle testing).
struct RestoreOverrides {
  std::optional<BackgroundLight> bl;
  std::optional<TransmissionMaps> tm;
  std::optional<DepthMap> depth;  // drives Ulap BL and Ulap/Ibla TM
};

struct RestoreResult {
  ImageRGB image;
  BackgroundLight bl;
  TransmissionMaps tm;
};

/// BL estimate -> TM estimate -> optional refinement -> radiance recovery
/// -> optional post stage.
RestoreResult restore(const ImageRGB& img, const RestorationPipeline& pipeline, WindowSpec win,
                      const PriorConstants& consts, const RestoreOverrides& overrides = {});

}  // namespace uwkit
