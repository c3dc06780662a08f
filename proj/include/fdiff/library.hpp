#pragma once

#include <string>
#include <vector>

#include "fdiff/classes.hpp"

namespace fdiff {

struct NamedSpec {
  std::string name;
  ClassSpec spec;
};

// every class functor shipped for the tautness, counting and closed-form suites
std::vector<NamedSpec> class_library();

}  // namespace fdiff
