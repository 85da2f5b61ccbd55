// Copyright 2026 The sreval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SREVAL_TIMESTAMP_H_
#define SREVAL_TIMESTAMP_H_

#include <chrono>
#include <string>
#include <string_view>

namespace sreval {

using Timestamp = std::chrono::sys_seconds;

// Accepts "YYYY-MM-DD", "YYYY-MM-DDTHH:MM:SS" with optional fractional
// seconds (truncated) and an optional "Z" or "+HH:MM"/"-HH:MM" offset.
// Missing offsets mean UTC. Throws ValidationError on malformed input.
Timestamp ParseIso8601(std::string_view text);

// "YYYY-MM-DDTHH:MM:SSZ".
std::string FormatIso8601(Timestamp t);

Timestamp NowUtc();

}  // namespace sreval

#endif  // SREVAL_TIMESTAMP_H_
