from lossyhom.io.datasets import SCHEMAS, read_counts, to_csv_text, validate_columns, write_dataset

__all__ = ["SCHEMAS", "read_counts", "to_csv_text", "validate_columns", "write_dataset"]
