from .dimacs import DimacsDocument, read_dimacs, write_dimacs
from .errors import (ClauseCountError, ClauseWidthError, ContractError, ConvergenceError,
                     DimacsError, DuplicateVariableError, HeaderError, LiteralRangeError,
                     OracleCapError, SeriesOverflowError, WarpsatError)
from .formula import (FALSE, TRUE, UNSET, Assignment, FieldSample, Formula, Literal,
                      degree_histogram, energy, field_samples, flip_field, flip_fields,
                      literal_truth, occurrence_counts, occurrences)

__all__ = [
    'Assignment', 'FieldSample', 'Formula', 'Literal', 'TRUE', 'FALSE', 'UNSET',
    'energy', 'flip_field', 'flip_fields', 'occurrences', 'occurrence_counts',
    'degree_histogram', 'field_samples', 'literal_truth',
    'DimacsDocument', 'read_dimacs', 'write_dimacs',
    'WarpsatError', 'ContractError', 'OracleCapError', 'ConvergenceError', 'SeriesOverflowError',
    'DimacsError', 'HeaderError', 'LiteralRangeError', 'ClauseWidthError',
    'DuplicateVariableError', 'ClauseCountError',
]
