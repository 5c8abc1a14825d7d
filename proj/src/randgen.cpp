#include "dianet/randgen.hpp"

#include <algorithm>

namespace dianet {

SystemSpec random_system(std::mt19937& rng, const RandomSystemParams& params,
                         const std::string& name) {
  auto pick = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };

  SystemSpec spec;
  spec.name = name;
  int n = pick(params.min_components, params.max_components);
  int n_obs = pick(2, params.max_observables);
  int n_faults = pick(1, params.max_faults);

  std::vector<ActionId> obs, faults;
  for (int i = 0; i < n_obs; ++i)
    obs.push_back(spec.sigma.add_observable("o" + std::to_string(i + 1)));
  for (int i = 0; i < n_faults; ++i)
    faults.push_back(
        spec.sigma.add_unobservable("f" + std::to_string(i + 1), true));

  for (int c = 0; c < n; ++c) {
    Automaton a;
    a.name = std::string(1, static_cast<char>('X' + c));
    int n_states = pick(2, params.max_states);
    for (int s = 0; s < n_states; ++s)
      a.add_state("q" + std::to_string(s));
    a.initial = 0;

    // Private unobservable actions per component; sharing an unobservable
    // non-fault label is rejected by the model.
    std::vector<ActionId> priv;
    int n_priv = pick(0, params.max_private_unobservables);
    for (int u = 0; u < n_priv; ++u)
      priv.push_back(spec.sigma.add_unobservable(
          "u" + std::to_string(u + 1) + "_" + a.name, false));

    std::vector<ActionId> unobs = priv;
    for (ActionId f : faults)
      if (pick(0, 1) == 1 || c == 0) unobs.push_back(f);

    // Unobservable transitions only go forward in state order, so they can
    // never close a cycle.
    for (ActionId u : unobs) {
      int uses = pick(1, 2);
      for (int k = 0; k < uses && n_states > 1; ++k) {
        int src = pick(0, n_states - 2);
        int dst = pick(src + 1, n_states - 1);
        a.add_transition(src, u, dst);
      }
    }
    int n_extra = pick(n_states, 2 * n_states);
    for (int k = 0; k < n_extra; ++k) {
      int src = pick(0, n_states - 1);
      int dst = pick(0, n_states - 1);
      a.add_transition(src, obs[pick(0, n_obs - 1)], dst);
    }
    // Liveness: give every silent state an observable self-loop.
    std::vector<bool> has_out(n_states, false);
    for (const auto& t : a.transitions) has_out[t.src] = true;
    for (int s = 0; s < n_states; ++s)
      if (!has_out[s]) a.add_transition(s, obs[pick(0, n_obs - 1)], s);

    // Drop exact duplicates; the transition relation is a set.
    std::sort(a.transitions.begin(), a.transitions.end(),
              [](const AutomatonTransition& x, const AutomatonTransition& y) {
                return std::tie(x.src, x.action, x.dst) <
                       std::tie(y.src, y.action, y.dst);
              });
    a.transitions.erase(std::unique(a.transitions.begin(), a.transitions.end()),
                        a.transitions.end());
    spec.components.push_back(std::move(a));
  }
  return spec;
}

}  // namespace dianet
