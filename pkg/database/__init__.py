from .database import SWEEP_COLUMNS, ResultsDatabase

__all__ = ['ResultsDatabase', 'SWEEP_COLUMNS']
