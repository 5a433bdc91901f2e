from .generators import (DISTRIBUTIONS, GenConfig, PlantedInstance, RejectionResult, gen_batch,
                         gen_planted, gen_planted_energy, gen_uniform, generate,
                         planted_measure_exact, sample_psat_rejection)
from .seeding import RNG_NAME, derive_seed, make_rng, splitmix64

__all__ = [
    'GenConfig', 'PlantedInstance', 'RejectionResult', 'DISTRIBUTIONS',
    'gen_uniform', 'gen_planted', 'gen_planted_energy', 'generate', 'gen_batch',
    'sample_psat_rejection', 'planted_measure_exact',
    'RNG_NAME', 'derive_seed', 'make_rng', 'splitmix64',
]
