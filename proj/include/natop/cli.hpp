#pragma once

#include <string>
#include <vector>

namespace natop {

// Entry point of the command line tool, callable from tests.
// Exit codes: 0 success / verified, 1 verification failure, 2 input error.
int run_cli(const std::vector<std::string>& args);

// Named fixture combinations (see `emit-fixture`): curvature, lie-bracket,
// cov-deriv, u3-traces, u3-wheel, u3-traces-leading, u3-wheel-leading.
std::string fixture_json(const std::string& name);

extern const char* kVersion;

}  // namespace natop
