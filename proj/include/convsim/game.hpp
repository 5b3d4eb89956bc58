#pragma once

#include <stdexcept>
#include <string>

namespace convsim {

enum class Strategy : unsigned char { Hawk = 0, Dove = 1 };
enum class Role : unsigned char { Host = 0, Visitor = 1 };

// The two role-conditioned conventions: Bourgeois plays hawk when hosting and
// dove when visiting, Paradoxical the reverse.
enum class ConventionKind : unsigned char { Bourgeois, Paradoxical };

// Payoff parameters of a game of conflict, normalized so hawk-vs-hawk pays 0
// and hawk-vs-dove pays 1 in both roles. x is the dove-vs-hawk payoff, y the
// dove-vs-dove payoff; subscript 1 applies when hosting, 2 when visiting.
struct GamePayoffs {
  double x1 = 0.0;
  double y1 = 0.0;
  double x2 = 0.0;
  double y2 = 0.0;

  // Throws std::invalid_argument naming the violated rule. Openness of the
  // unit interval is exactly the conflict ordering: 1 > y_i keeps exploiting
  // a dove the best outcome, x_i > 0 keeps mutual hawk the worst.
  void validate() const {
    auto check = [](double v, const char* name) {
      if (!(v > 0.0) || !(v < 1.0)) {
        throw std::invalid_argument(std::string("GamePayoffs: ") + name +
                                    " must lie strictly inside (0, 1)");
      }
    };
    check(x1, "x1");
    check(y1, "y1");
    check(x2, "x2");
    check(y2, "y2");
  }
};

// Payoff to `own` against `opponent` when playing in `role`.
inline double payoff(Strategy own, Strategy opponent, Role role,
                     const GamePayoffs& g) noexcept {
  if (own == Strategy::Hawk) {
    return opponent == Strategy::Hawk ? 0.0 : 1.0;
  }
  if (opponent == Strategy::Hawk) {
    return role == Role::Host ? g.x1 : g.x2;
  }
  return role == Role::Host ? g.y1 : g.y2;
}

struct MixedNash {
  double p_dove_host;
  double p_dove_visitor;
};

// Role-wise mixed equilibrium dove probabilities, x_i / (1 - y_i + x_i).
inline MixedNash mixed_nash(const GamePayoffs& g) noexcept {
  return {g.x1 / (1.0 - g.y1 + g.x1), g.x2 / (1.0 - g.y2 + g.x2)};
}

struct ConventionPayoffs {
  double host;
  double visitor;
};

// Per-interaction payoffs once a convention is locked in: the hawk side
// collects the maximal payoff, the dove side its dove-vs-hawk share.
inline ConventionPayoffs convention_payoffs(const GamePayoffs& g,
                                            ConventionKind k) noexcept {
  return k == ConventionKind::Bourgeois ? ConventionPayoffs{1.0, g.x2}
                                        : ConventionPayoffs{g.x1, 1.0};
}

}  // namespace convsim
