import json
import logging
import sqlite3
from datetime import datetime

logger = logging.getLogger(__name__)

SWEEP_COLUMNS = ("E", "trials", "convergence_rate", "convergence_rate_se", "mean_iterations",
                 "mean_iterations_se", "mean_unassigned", "mean_unassigned_se",
                 "mean_agree_with_root", "mean_agree_with_root_se", "mean_final_energy_gap",
                 "mean_final_energy_gap_se", "n_converged", "sat_rate")


class ResultsDatabase:
    def __init__(self, db_path="warpsat_runs.db"):
        self.db_path = db_path
        self.init_database()

    def init_database(self):
        """Initialize database with required tables"""
        conn = sqlite3.connect(self.db_path)
        cursor = conn.cursor()

        # One row per CLI experiment run
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                kind TEXT NOT NULL,
                config TEXT NOT NULL,
                summary TEXT,
                created_at TIMESTAMP DEFAULT CURRENT_TIMESTAMP
            )
        ''')

        # Finite-energy sweep aggregates, one row per planted energy
        cursor.execute('''
            CREATE TABLE IF NOT EXISTS sweep_records (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                run_id INTEGER NOT NULL,
                E INTEGER NOT NULL,
                trials INTEGER NOT NULL,
                convergence_rate REAL,
                convergence_rate_se REAL,
                mean_iterations REAL,
                mean_iterations_se REAL,
                mean_unassigned REAL,
                mean_unassigned_se REAL,
                mean_agree_with_root REAL,
                mean_agree_with_root_se REAL,
                mean_final_energy_gap REAL,
                mean_final_energy_gap_se REAL,
                n_converged INTEGER,
                sat_rate REAL,
                FOREIGN KEY (run_id) REFERENCES runs (id)
            )
        ''')

        conn.commit()
        conn.close()

    def save_run(self, kind, config, summary=None):
        """Store one run; returns (True, run_id) or (False, message)"""
        try:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            cursor.execute('''
                INSERT INTO runs (kind, config, summary, created_at)
                VALUES (?, ?, ?, ?)
            ''', (kind, json.dumps(config, default=str), json.dumps(summary, default=str),
                  datetime.now().isoformat(timespec="seconds")))
            run_id = cursor.lastrowid
            conn.commit()
            conn.close()
            logger.info("✅ Saved %s run #%d to %s", kind, run_id, self.db_path)
            return True, run_id
        except Exception as e:
            logger.error("❌ DB save_run error: %s", e)
            return False, f"Saving run failed: {str(e)}"

    def save_sweep_records(self, run_id, records):
        """Store sweep rows (dicts with the SweepRecord columns) under ``run_id``"""
        try:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            placeholders = ", ".join("?" for _ in SWEEP_COLUMNS)
            cursor.executemany(f'''
                INSERT INTO sweep_records (run_id, {", ".join(SWEEP_COLUMNS)})
                VALUES (?, {placeholders})
            ''', [(run_id, *(row.get(col) for col in SWEEP_COLUMNS)) for row in records])
            conn.commit()
            conn.close()
            return True, f"Saved {len(records)} sweep records"
        except Exception as e:
            logger.error("❌ DB save_sweep_records error: %s", e)
            return False, f"Saving sweep records failed: {str(e)}"

    def get_run_history(self, kind=None, limit=50):
        """Most recent runs first, optionally restricted to one kind"""
        try:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            if kind is None:
                cursor.execute('''
                    SELECT id, kind, config, summary, created_at
                    FROM runs
                    ORDER BY id DESC
                    LIMIT ?
                ''', (limit,))
            else:
                cursor.execute('''
                    SELECT id, kind, config, summary, created_at
                    FROM runs
                    WHERE kind = ?
                    ORDER BY id DESC
                    LIMIT ?
                ''', (kind, limit))
            rows = cursor.fetchall()
            conn.close()
            return [{
                'id': row[0],
                'kind': row[1],
                'config': json.loads(row[2]),
                'summary': json.loads(row[3]) if row[3] else None,
                'created_at': row[4],
            } for row in rows]
        except Exception as e:
            logger.error("❌ DB get_run_history error: %s", e)
            return []

    def get_sweep_records(self, run_id):
        try:
            conn = sqlite3.connect(self.db_path)
            cursor = conn.cursor()
            cursor.execute(f'''
                SELECT {", ".join(SWEEP_COLUMNS)}
                FROM sweep_records
                WHERE run_id = ?
                ORDER BY E
            ''', (run_id,))
            rows = cursor.fetchall()
            conn.close()
            return [dict(zip(SWEEP_COLUMNS, row)) for row in rows]
        except Exception as e:
            logger.error("❌ DB get_sweep_records error: %s", e)
            return []
