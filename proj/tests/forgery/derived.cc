// expect: private
#include "microhol/kernel.h"

struct Fake : microhol::Theorem {
  explicit Fake(microhol::Term c) : microhol::Theorem(0, 0, nullptr, c, false) {}
};
