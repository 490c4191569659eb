/*
 * Copyright 2026 The Birdseye Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef BIRDSEYE_RENDER_HPP_
#define BIRDSEYE_RENDER_HPP_

#include <string>

#include "birdseye/episode.hpp"
#include "birdseye/grid.hpp"

namespace birdseye {

struct RenderArtifacts {
  std::string svg;
  std::string pgm;
};

// Trajectory overlay in the usual figure style: light-blue shading for the
// region outside the initial FOV, dark obstacle cells, a green start star,
// a yellow target star, and the path as a solid blue polyline. The PGM is
// a flat raster (free 255, outside-FOV 200, path 128, start 90, target 60,
// obstacle 0). Output bytes are deterministic for identical inputs.
RenderArtifacts render_trace(const EpisodeOutcome& outcome,
                             const GlobalMap& map, FovSize initial_fov);

}  // namespace birdseye

#endif  // BIRDSEYE_RENDER_HPP_
