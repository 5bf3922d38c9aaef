#pragma once

#include <string>

#include "pep/format.hpp"
#include "pep/instance.hpp"

namespace testing {

/// One-letter instance over Σ = {0}, Γ = {a, b}.
inline pep::PepInstance unary(const std::string& variant, const std::string& u, const std::string& v,
                              const std::string& r, const std::string& rp = "none") {
  return pep::parse_instance("variant " + variant + "\nsigma 0\ngamma a b\nu 0 = " + u +
                             "\nv 0 = " + v + "\nR = " + r + "\nRp = " + rp + "\n");
}

inline pep::Word w(const pep::PepInstance& inst, const std::string& text) {
  return inst.sigma()->parse_word(text);
}

inline std::string show(const pep::PepInstance& inst, pep::WordView word) {
  return inst.sigma()->format(word);
}

inline std::string show_gamma(const pep::PepInstance& inst, pep::WordView word) {
  return inst.gamma()->format(word);
}

}  // namespace testing
