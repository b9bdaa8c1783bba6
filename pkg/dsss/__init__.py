from dsss.bank import (
    check_bank,
    default_bank,
    generate_bank,
    load_bank,
    save_bank,
    select_polynomial,
)
from dsss.lfsr import lfsr_generate, measure_period
from dsss.spreading import code_correlation, despread, export_codes_csv, periodic_autocorrelation, spread
from dsss.ssg import code_from_seed_value, seed_from_bits, seed_value, ssg_code
