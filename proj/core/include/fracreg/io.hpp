#pragma once

#include <string>

namespace fracreg {

// Shortest %.17g rendering; reproduces the value bit-for-bit on read-back
// and is byte-stable across runs.
std::string format_double(double v);

// Write-temp-then-rename so partially written outputs are never observed.
void atomic_write_file(const std::string& path, const std::string& content);

}  // namespace fracreg
