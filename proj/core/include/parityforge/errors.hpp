// Copyright 2026 The parityforge authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PARITYFORGE_ERRORS_HPP
#define PARITYFORGE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace parityforge {

// Every failure raised by the library names the module it came from so that
// callers (and the CLI) can distinguish input-contract violations from
// verification failures without string matching on free-form text.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& what)
      : std::runtime_error("[" + module + "] " + what), module_(std::move(module)) {}

  const std::string& module() const { return module_; }

 private:
  std::string module_;
};

}  // namespace parityforge

#endif
