from .solovay import (SolovayInstance, as_fraction, solovay_to_mlt, solovay_to_mlt_with_trace,
                      convert_member, mass_records, witness_levels, verify_failure_transfer)
