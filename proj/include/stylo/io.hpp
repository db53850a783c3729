// stylo/io.hpp
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STYLO_IO_HPP
#define STYLO_IO_HPP

#include <string>

#include <json.hpp>

#include "stylo/evaluation.hpp"
#include "stylo/preprocess.hpp"

namespace stylo {

/// rank,value rows, ranks 1..M.
void save_cmc_csv(const CmcCurve& curve, const std::string& path);

/// fmr,fnmr rows over the threshold sweep.
void save_det_csv(const DetCurve& curve, const std::string& path);

nlohmann::json report_to_json(const ExperimentReport& report);

nlohmann::json permanence_to_json(const PermanenceReport& report);

nlohmann::json normalized_tweet_to_json(const NormalizedTweet& tweet);

}  // namespace stylo

#endif  // STYLO_IO_HPP
