// rcskit — radar cross section modeling and sensing-channel simulation
// Copyright (C) 2026 rcskit contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <stdexcept>
#include <string>

namespace rcskit {

/// Malformed or inconsistent input files (CSV rows, sweep metadata, config schema).
class format_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Invalid configuration value (unknown tags, schema violations).
class config_error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Numerical failure inside a fitting stage; carries the stage name.
class fit_error : public std::runtime_error {
  public:
    fit_error(std::string stage, const std::string& what)
        : std::runtime_error("[" + stage + "] " + what), stage_(std::move(stage))
    {
    }

    const std::string& stage() const noexcept { return stage_; }

  private:
    std::string stage_;
};

} // namespace rcskit
