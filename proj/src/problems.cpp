#include "fopk/problems.hpp"

#include "fopk/matrix_market.hpp"

#include <sstream>

namespace fopk {

std::string ProblemSpec::family_label() const {
  switch (family) {
    case Family::Disc5Point: {
      std::ostringstream ss;
      ss << "disc5(delta=" << delta << ")";
      return ss.str();
    }
    case Family::Hilbert: return "hilbert";
    case Family::External: return "mm:" + path;
  }
  return "unknown";
}

Problem<double> make_problem(const ProblemSpec& spec) {
  switch (spec.family) {
    case ProblemSpec::Family::Disc5Point: return gen_disc5point<double>(spec.n, spec.delta, spec.block_size);
    case ProblemSpec::Family::Hilbert: return gen_hilbert<double>(spec.n);
    case ProblemSpec::Family::External: return with_ones_solution(load_matrix_market(spec.path));
  }
  throw std::invalid_argument("make_problem: unknown family");
}

}  // namespace fopk
