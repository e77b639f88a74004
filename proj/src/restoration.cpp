#include "uwkit/restoration.hpp"

#include <algorithm>

namespace uwkit {

ImageRGB recover_radiance(const ImageRGB& img, const Rgb& bl, const TransmissionMaps& tm, double t_floor) {
  if (!(t_floor > 0.0 && t_floor < 1.0)) throw Error("recover_radiance: t_floor must lie in (0,1)");
  for (int c = 0; c < 3; ++c) require_same_shape(img, tm.channel(c), "recover_radiance");
  ImageRGB out(img.width(), img.height());
  for (int c = 0; c < 3; ++c) {
    const ImageGray& in = img.channel(c);
    const ImageGray& t = tm.channel(c);
    ImageGray& dst = out.channel(c);
    const double b = bl[c];
    for (std::size_t i = 0; i < in.size(); ++i)
      dst[i] = std::clamp((in[i] - b) / std::max(t[i], t_floor) + b, 0.0, 1.0);
  }
  return out;
}

void RestorationPipeline::validate() const {
  if (!(t_floor > 0.0 && t_floor < 1.0)) throw Error("pipeline " + name + ": t_floor must lie in (0,1)");
  if (refine_params.radius < 0 || refine_params.eps < 0.0) throw Error("pipeline " + name + ": bad refine params");
}

namespace {

struct PipelineDef {
  std::string_view name;
  BlMethod bl;
  TmMethod tm;
};

constexpr PipelineDef kPipelines[] = {
    {"sir", BlMethod::DcpBrightest, TmMethod::Dcp},     {"rir", BlMethod::DcpTop01, TmMethod::DcpMedian},
    {"iuid", BlMethod::Mip, TmMethod::Mip},             {"teoui", BlMethod::Udcp, TmMethod::Udcp},
    {"nom", BlMethod::DcpMipDiff, TmMethod::NomRed},    {"rcp", BlMethod::RcpTop10, TmMethod::Rcp},
    {"ibla", BlMethod::BlurTop01Avg, TmMethod::Ibla},   {"ulap", BlMethod::Ulap, TmMethod::Ulap},
};

}  // namespace

RestorationPipeline named_pipeline(std::string_view name) {
  for (const auto& def : kPipelines)
    if (def.name == name) {
      RestorationPipeline p;
      p.name = std::string(def.name);
      p.bl_method = def.bl;
      p.tm_method = def.tm;
      return p;
    }
  throw Error("unknown restoration method: " + std::string(name));
}

const std::vector<std::string>& pipeline_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> v;
    for (const auto& def : kPipelines) v.emplace_back(def.name);
    return v;
  }();
  return names;
}

RestoreResult restore(const ImageRGB& img, const RestorationPipeline& pipeline, WindowSpec win,
                      const PriorConstants& consts, const RestoreOverrides& overrides) {
  pipeline.validate();
  require_valid(img, "restore");

  BackgroundLight bl;
  if (overrides.bl)
    bl = *overrides.bl;
  else if (overrides.depth && pipeline.bl_method == BlMethod::Ulap)
    bl = ulap_background_light(img, *overrides.depth);
  else
    bl = estimate_background_light(img, pipeline.bl_method, win, consts);

  TransmissionMaps tm;
  if (overrides.tm) {
    tm = *overrides.tm;
  } else {
    tm = estimate_transmission(img, bl, pipeline.tm_method, win, consts, TmInputs{overrides.depth});
    if (pipeline.refine) tm = refine_tm(tm, img, pipeline.refine_params.radius, pipeline.refine_params.eps);
  }

  ImageRGB out = recover_radiance(img, bl.color, tm, pipeline.t_floor);
  if (pipeline.post) out = clamp01(pipeline.post(out));
  return {std::move(out), std::move(bl), std::move(tm)};
}

}  // namespace uwkit
