#pragma once

#include <iosfwd>
#include <string>

#include "fplap/field.hpp"

namespace fplap {

void write_checkpoint(std::ostream& os, const Field& f);
void write_checkpoint(const std::string& path, const Field& f);
Field read_checkpoint(std::istream& is);
Field read_checkpoint(const std::string& path);

std::string fmt17(double v);

}  // namespace fplap
