#pragma once

#include <array>
#include <optional>
#include <string_view>

#include "uwkit/background_light.hpp"
#include "uwkit/image.hpp"
#include "uwkit/kernels.hpp"
#include "uwkit/priors.hpp"

namespace uwkit {

enum class TmMethod { Dcp, DcpMedian, Udcp, Mip, Rcp, NomRed, Blurriness, WavelengthRatio, Ulap, Ibla };

inline constexpr TmMethod kAllTmMethods[] = {TmMethod::Dcp,    TmMethod::DcpMedian,  TmMethod::Udcp,
                                             TmMethod::Mip,    TmMethod::Rcp,        TmMethod::NomRed,
                                             TmMethod::Blurriness, TmMethod::WavelengthRatio, TmMethod::Ulap,
                                             TmMethod::Ibla};

std::string_view to_string(TmMethod m);
TmMethod parse_tm_method(std::string_view name);

/// Per-channel transmission t_r, t_g, t_b, each in [0,1].
struct TransmissionMaps {
  std::array<ImageGray, 3> t;
  TmMethod method = TmMethod::Dcp;
  bool refined = false;

  const ImageGray& channel(int c) const { return t[static_cast<std::size_t>(c)]; }
  ImageGray& channel(int c) { return t[static_cast<std::size_t>(c)]; }
  int width() const { return t[0].width(); }
  int height() const { return t[0].height(); }

  static TransmissionMaps uniform(const ImageGray& map, TmMethod method);
};

/// Optional externally supplied inputs that replace internal estimates.
struct TmInputs {
  std::optional<DepthMap> depth;  // Ulap / Ibla use it instead of estimating
};

/// Attenuation-coefficient ratios (beta_g/beta_r, beta_b/beta_r) derived from
/// the background light: B_r (m*lambda_c + i) / (B_c (m*lambda_r + i)).
std::array<double, 2> attenuation_ratios(const Rgb& bl, const PriorConstants& consts);

/// t_c = t_r ^ ratio_c for c in {g, b}.
std::array<ImageGray, 2> wavelength_extend(const ImageGray& t_r, std::array<double, 2> ratios);

/// Raw estimates are clamped to [0,1]; the recovery floor is applied later.
/// Throws when a variant divides by a background-light component that is
/// (numerically) zero, or by 1 - B_r for Rcp.
TransmissionMaps estimate_transmission(const ImageRGB& img, const BackgroundLight& bl, TmMethod method,
                                       WindowSpec win, const PriorConstants& consts, const TmInputs& inputs = {});

/// Guided-filters each channel against the gray guide; clamps to [0,1].
TransmissionMaps refine_tm(const TransmissionMaps& tm, const ImageRGB& guide, int radius, double eps);

/// t_c = Nrer_c ^ d per channel.
TransmissionMaps tm_from_depth(const DepthMap& depth, const PriorConstants& consts);

}  // namespace uwkit
