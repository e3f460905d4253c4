// Quickstart: hide a pair of real-form generators behind a random
// conjugation, then recover the real form from trace data alone.

#include <iostream>

#include "su21/su21.hpp"

int main() {
  using namespace su21;

  // Two real generators: a boost and a rational rotation.
  const Su21Element boost = corpus_so21_boost(2.0);
  const Su21Element rot = corpus_so21_rotation();

  // Hide them: conjugate both by a random group element.
  const Su21Element s = random_su21(/*seed=*/42);
  const GroupSpec hidden({group_conjugate(s, boost), group_conjugate(s, rot)},
                         /*assumed_discrete=*/true);

  // Every generator entry is now genuinely complex...
  std::cout << "hidden generator (0,0) entry: "
            << hidden.generators[0].matrix()(0, 0) << "\n";

  // ...but the sampled trace field is real, so the group conjugates back
  // into the real form.
  const WordSampler sampler = WordSampler::for_spec(hidden, 4);
  const TraceReport traces = sample_traces(hidden, sampler);
  std::cout << "sampled traces real: " << (traces.is_real ? "yes" : "no")
            << " (max imaginary part " << traces.max_imag << ")\n";

  const Certificate cert = conjugate_into_so21(hidden);
  std::cout << "real-form residual (max |Im entry|): " << cert.residual
            << "\n";

  // And the classifier names the structure.
  const FuchsianVerdict v =
      classify_fuchsian(hidden, /*assumed_discrete=*/true, sampler);
  std::cout << "verdict: " << to_string(v.verdict) << "\n";
  return 0;
}
