#include "momentkit/rational.hpp"

#include "momentkit/errors.hpp"

namespace momentkit {

Rat make_rat(long num, long den)
{
  if (den == 0)
    throw Error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat &r) { return r.get_str(); }

bool is_integer(const Rat &r) { return r.get_den() == 1; }

} // namespace momentkit
