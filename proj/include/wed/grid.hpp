// SPDX-License-Identifier: Apache-2.0
#pragma once

// Boundary vertex numbering for a width x height rectangle in local
// coordinates.  Inputs run up the left side from (0,h) to (0,0) and then
// along the top to (w,0); outputs run along the bottom from (0,h) to (w,h)
// and then up the right side to (w,0).  Both sequences have w+h+1 entries.

#include "wed/core.hpp"

namespace wed {

inline Vertex input_vertex(int /*w*/, int h, int t) { return t <= h ? Vertex{0, h - t} : Vertex{t - h, 0}; }
inline Vertex output_vertex(int w, int h, int t) { return t <= w ? Vertex{t, h} : Vertex{w, h - (t - w)}; }

// -1 when the vertex is not on the respective side.
inline int input_index(int w, int h, Vertex v) {
  if (v.x == 0 && v.y >= 0 && v.y <= h) return h - v.y;
  if (v.y == 0 && v.x >= 1 && v.x <= w) return h + v.x;
  return -1;
}
inline int output_index(int w, int h, Vertex v) {
  if (v.y == h && v.x >= 0 && v.x <= w) return v.x;
  if (v.x == w && v.y >= 0 && v.y < h) return w + (h - v.y);
  return -1;
}

}  // namespace wed
