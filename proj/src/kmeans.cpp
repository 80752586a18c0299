// Copyright 2026 The sliceprof Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sliceprof/kmeans.hpp"

namespace sliceprof {

std::string_view to_string(KMeansInit init) {
  return init == KMeansInit::kForgy ? "forgy" : "kpp";
}

std::optional<KMeansInit> kmeans_init_from_string(std::string_view name) {
  if (name == "kpp" || name == "kmeans++") return KMeansInit::kKMeansPlusPlus;
  if (name == "forgy") return KMeansInit::kForgy;
  return std::nullopt;
}

}  // namespace sliceprof
