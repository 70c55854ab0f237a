// expect: no matching function
#include "microhol/kernel.h"

microhol::Theorem forge() {
  microhol::Theorem th;
  return th;
}
