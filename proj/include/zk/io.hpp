#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "zk/bands.hpp"
#include "zk/certify.hpp"
#include "zk/ratfun.hpp"
#include "zk/solver.hpp"
#include "zk/stiefel.hpp"

namespace zk {

// Field order in emitted documents is load-bearing for diffing and golden
// files, hence the ordered flavor.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kToolVersion = "1.0.0";

// On-disk problem: band geometry plus whichever of windows, class array and
// function the workflow needs.  Infinity is serialized as the string "inf";
// all coordinates are plain numbers, never homogeneous pairs.
struct Problem {
  BandSystem bands;
  std::optional<ValueWindows> windows;
  std::optional<IndexArray> class_array;
  std::optional<RealRational> function;
};

Json point_json(const ProjPoint& x);
ProjPoint point_from_json(const Json& j);

Json bands_json(const BandSystem& e);
BandSystem bands_from_json(const Json& j);

// Four endpoints in window order (start/end of the minus window, then of the
// plus window); accepts {"mu": m} and {"theta": t} shorthand on input.
Json windows_json(const ValueWindows& f);
ValueWindows windows_from_json(const Json& j);

Json class_json(const IndexArray& a);
IndexArray class_from_json(const Json& j);

Json function_json(const RealRational& r);
RealRational function_from_json(const Json& j);

Json problem_json(const Problem& p);
Problem problem_from_json(const Json& j);

// File I/O; parse and schema failures raise errc::precondition_violated with
// the parser's position diagnostics in the message.
Problem load_problem(const std::string& path);
void save_problem(const std::string& path, const Problem& p);

Json certificate_json(const Certificate& c);

// Full solve report; oracle_kappa, when given, is recorded along with the
// relative gap to the final window cross ratio.
Json report_json(const SolveReport& rep, std::optional<double> oracle_kappa = {});

}  // namespace zk
