// Level one, e = 2: the block of partitions of 2, its decomposition and
// Cartan matrices, and one affine KL polynomial.
#include "kldecomp/decomp.hpp"

#include <iomanip>
#include <iostream>

int main() {
  using namespace kld;
  const Charge chg({0}, 2);
  for (const Block& d : blocks_of_size(chg, 2)) {
    const BlockResult r = block_matrices(chg, d);
    std::cout << "block " << block_str(d) << "   D | C\n";
    for (std::size_t i = 0; i < r.D.size(); ++i) {
      std::cout << "  " << std::left << std::setw(9) << r.block.labels[i].lam.str();
      for (const auto& p : r.D[i]) std::cout << std::setw(6) << p.str();
      std::cout << "|  ";
      for (const auto& p : r.C[i]) std::cout << std::setw(7) << p.str();
      std::cout << "\n";
    }
  }

  KLEngine eng(3);
  const AffinePerm x = AffinePerm::from_word(3, {0, 1, 0});
  std::cout << "h_{e,s0 s1 s0} = " << eng.h(AffinePerm(3), x).str() << "  (window " << x.str() << ")\n";
}
