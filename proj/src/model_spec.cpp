#include "ehl/model_spec.hpp"

#include "ehl/ehl_core.hpp"
#include "ehl/rng.hpp"

namespace ehl {

bool is_gaussian_model(const ModelSpec& spec) {
  return spec.model == "dimerized" || spec.model == "random-hopping";
}

bool is_dense_model(const ModelSpec& spec) {
  return spec.model == "ghz" || spec.model == "w" || spec.model == "bell-pairs" ||
         spec.model == "product" || spec.model == "product-pair" || spec.model == "random-dense";
}

int resolved_filling(const ModelSpec& spec) {
  if (spec.filling) {
    if (*spec.filling < 0 || *spec.filling > spec.n_sites)
      throw input_error("filling outside [0, n]");
    return *spec.filling;
  }
  return half_filling(spec.n_sites);
}

mask_t product_pair_cut(const ModelSpec& spec) {
  if (spec.model != "product-pair") throw input_error("product_pair_cut: not a product-pair model");
  return full_mask(spec.n_sites / 2);
}

Subject make_subject(const ModelSpec& spec, int jobs, int crosscheck_samples) {
  Subject subject;
  subject.spec = spec;

  if (is_gaussian_model(spec)) {
    HoppingChain chain;
    chain.model = spec.model == "dimerized" ? HoppingChain::Model::dimerized
                                            : HoppingChain::Model::random_hopping;
    chain.n_sites = spec.n_sites;
    chain.boundary = spec.boundary;
    chain.t0 = spec.t0;
    chain.delta = spec.delta;
    chain.seed = spec.seed;
    const std::vector<double> t = build_hoppings(chain);
    subject.gauss = ground_correlation(t, spec.boundary, resolved_filling(spec));
    subject.entropy = entropy_table_gaussian(*subject.gauss, jobs, crosscheck_samples);
  } else if (is_dense_model(spec)) {
    if (spec.model == "random-dense") {
      if (!spec.seed) throw input_error("random-dense needs a seed");
      subject.psi = random_state(spec.n_sites, *spec.seed);
    } else if (spec.model == "product-pair") {
      if (!spec.seed) throw input_error("product-pair needs a seed");
      if (spec.n_sites < 2) throw input_error("product-pair needs at least 2 sites");
      SplitMix64 seeder(*spec.seed);
      const int left = spec.n_sites / 2;
      const PureState a = random_state(left, seeder.next_u64());
      const PureState b = random_state(spec.n_sites - left, seeder.next_u64());
      subject.psi = tensor_product(a, b);
    } else {
      subject.psi = build_named_state(parse_state_family(spec.model), spec.n_sites, spec.seed);
    }
    subject.entropy = entropy_table_dense(*subject.psi, jobs);
  } else {
    throw input_error("unknown model: " + spec.model);
  }

  subject.links = ehl_table(subject.entropy);
  return subject;
}

}  // namespace ehl
