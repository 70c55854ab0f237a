// expect: private
#include "microhol/kernel.h"

void forge(microhol::Theorem& th, const microhol::Term& f) { th.concl_ = f; }
