#include <cassert>
#include <iostream>

#include <plateau/plateau.hpp>

using namespace plateau;

int main() {
  BooleanFunction f = parse_function("anf:x1*x3+x2*x4+x1*x2*x5");
  auto prof = plateaued_profile(f);
  assert(prof && prof->s == 1 && prof->amplitude == 8);
  auto cls = classify_plateaued(f);
  assert(cls.kind == PlateauKind::Nontrivial);
  AutocorrelationSpectrum ac = autocorrelation(f);
  int r = 0;
  for (auto v : ac.values)
    if (v != 0) ++r;
  assert(r == 5);
  std::cout << "smoke ok: " << to_anf_text(f) << " s=" << prof->s << "\n";
  return 0;
}
