// Copyright 2026 The dofkit Authors
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


// dofkit command-line entry point.
// Exit codes: 0 success, 1 usage error, 2 a verification check failed,
// 3 I/O error.

#include <iostream>
#include <string>
#include <vector>

#include "dofkit/experiment.hpp"

namespace {

constexpr const char* kInterfaceVersion = "1.0";

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (const auto& a : args) {
    if (a == "--version") {
      std::cout << "dofkit " << dofkit::tool_version() << " (interface " << kInterfaceVersion << ")\n";
      return 0;
    }
    if (a == "--help" || a == "-h") {
      std::cout << dofkit::command_usage();
      return 0;
    }
  }
  if (args.empty()) {
    std::cerr << dofkit::command_usage();
    return 1;
  }

  try {
    const dofkit::ExperimentConfig cfg = dofkit::parse_config(args);
    const dofkit::SweepResult result = dofkit::run_sweep(cfg);
    dofkit::emit_result(result, cfg, std::cout);
    if (!result.failures.empty()) {
      for (const auto& f : result.failures) std::cerr << "FAIL: " << f << '\n';
      return 2;
    }
  } catch (const dofkit::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const dofkit::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
