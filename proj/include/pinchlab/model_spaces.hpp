#pragma once

#include <string>
#include <string_view>

#include "pinchlab/check.hpp"
#include "pinchlab/curvature.hpp"

namespace pinchlab {

enum class ModelKind { Flat4, SphereS4, S3xR, S2xR2 };

/// Product or constant-curvature model; k is the sectional curvature of the
/// curved factor (ignored for Flat4). The curved factor occupies the lowest
/// frame indices. Pinching quantities are frame-invariant, so this choice only
/// affects how raw components read.
struct ModelSpace {
  ModelKind kind = ModelKind::Flat4;
  double k = 1.0;
};

std::string_view model_name(ModelKind kind);
/// Accepts flat, s4, s3xr, s2xr2 (case-insensitive); throws std::invalid_argument.
ModelKind parse_model_kind(std::string_view name);

CurvatureTensord model_curvature(const ModelSpace& m);

/// Verifies the sharpness data attached to each model: the norms of the
/// traceless Ricci and Weyl parts, the pinching residual at the critical
/// gamma, and lambda1 + lambda2, each as a multiple of R.
CheckReport remark_report(const ModelSpace& m);

}  // namespace pinchlab
