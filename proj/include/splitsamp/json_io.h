// Copyright 2026 The splitsamp Authors
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

#ifndef SPLITSAMP_JSON_IO_H_
#define SPLITSAMP_JSON_IO_H_

#include "json.hpp"
#include "splitsamp/bounds.h"

namespace splitsamp {

// Keys follow the TailBoundReport field names. Absent optionals are null.
nlohmann::json to_json(const TailBoundReport& report);

}  // namespace splitsamp

#endif  // SPLITSAMP_JSON_IO_H_
