#pragma once

// Shared fixtures for the test suites: small vector builders and the three
// hand-checked length-3 frames on l1^2 used throughout.

#include <complex>
#include <initializer_list>
#include <vector>

#include "funtf/frame.hpp"
#include "funtf/space.hpp"

namespace testfx {

using funtf::Complex;
using funtf::CVec;
using funtf::FramePair;
using funtf::FrameSystem;
using funtf::SpaceSpec;

inline CVec rv(std::initializer_list<double> vals) {
  CVec out(static_cast<int>(vals.size()));
  int i = 0;
  for (double v : vals) out[i++] = Complex(v, 0.0);
  return out;
}

inline FramePair pair(const CVec& x, const CVec& f) {
  FramePair p;
  p.x = x;
  p.f = f;
  return p;
}

inline SpaceSpec l1_2() { return SpaceSpec::lp(2, 1.0); }

// x-frame: a FUNTF, frame operator (3/2) I.
inline FrameSystem x_frame() {
  return FrameSystem(l1_2(), {pair(rv({1, 0}), rv({1, 0})),
                              pair(rv({0.25, -0.75}), rv({1, -1})),
                              pair(rv({0.25, 0.75}), rv({1, 1}))});
}

// y-frame: normalized but not a FUNTF, frame operator diag(2, 1).
inline FrameSystem y_frame() {
  return FrameSystem(l1_2(), {pair(rv({1, 0}), rv({1, 0})),
                              pair(rv({0.5, -0.5}), rv({1, -1})),
                              pair(rv({0.5, 0.5}), rv({1, 1}))});
}

// z-frame: the second naive-potential counterexample.
inline FrameSystem z_frame() {
  return FrameSystem(l1_2(), {pair(rv({1, 0}), rv({1, -1})),
                              pair(rv({0, 1}), rv({0, 1})),
                              pair(rv({0.5, 0.5}), rv({1, 1}))});
}

}  // namespace testfx
