// Copyright 2026 The TGIN Authors.
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
#ifndef TGIN_CORE_LOG_HPP_
#define TGIN_CORE_LOG_HPP_

#include <functional>
#include <string_view>

namespace tgin {

// Progress messages go to a process-wide sink; silent until one is set.
using LogSink = std::function<void(std::string_view)>;

void SetLogSink(LogSink sink);
void Log(std::string_view message);

}  // namespace tgin

#endif  // TGIN_CORE_LOG_HPP_
