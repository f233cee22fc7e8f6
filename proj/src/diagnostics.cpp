// Copyright 2026 The ArTS Authors.
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

#include "arts/diagnostics.hpp"

#include <atomic>
#include <iostream>

namespace arts {
namespace {
std::atomic<bool> g_quiet{false};
}

void set_quiet(bool quiet) { g_quiet = quiet; }
bool quiet() { return g_quiet; }

// Warnings are shown even under --quiet.
void warn(std::string_view message) {
  std::cerr << "warning: " << message << '\n';
}

void progress(std::string_view message) {
  if (!g_quiet) std::cerr << message << '\n';
}

}  // namespace arts
