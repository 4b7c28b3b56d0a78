#pragma once

namespace cqedlab::schema {

inline constexpr const char* kDevice = "cqedlab-device-v1";
inline constexpr const char* kSim = "cqedlab-sim-v1";
inline constexpr const char* kFit = "cqedlab-fit-v1";
inline constexpr const char* kMap = "cqedlab-map-v1";
inline constexpr const char* kTrace = "cqedlab-trace-v1";
inline constexpr const char* kBranch = "cqedlab-branch-v1";
inline constexpr const char* kLinewidth = "cqedlab-linewidth-v1";
inline constexpr const char* kRidge = "cqedlab-ridge-v1";
inline constexpr const char* kManifest = "cqedlab-manifest-v1";
inline constexpr const char* kReport = "cqedlab-report-v1";
inline constexpr const char* kExtract = "cqedlab-extract-v1";

}  // namespace cqedlab::schema
