#pragma once

#include <iosfwd>

/// Runs the built-in oracle checks; one line (or JSON entry) per check.
bool run_selftest(std::ostream& out, bool json);
