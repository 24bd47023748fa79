from .curve import read_curve_csv, write_curve_csv, write_residuals_csv
