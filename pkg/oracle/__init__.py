from .oracle import (DEFAULT_OPTIMA_CAP, ORACLE_CAP, ExactFields, GroundTruth, energy_table,
                     enumerate_ground_truth, exact_fields, is_satisfiable)

__all__ = ['ORACLE_CAP', 'DEFAULT_OPTIMA_CAP', 'GroundTruth', 'ExactFields', 'energy_table',
           'enumerate_ground_truth', 'exact_fields', 'is_satisfiable']
