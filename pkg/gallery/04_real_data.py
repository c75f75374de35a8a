"""
Fitting the shipped datasets
============================

Maximum likelihood fits with Kolmogorov-Smirnov checks on the bladder
cancer remission times and the guinea pig survival times, followed by
the WRJI comparison of candidate models against the fitted actual law.
"""

import numpy as np

from wrji.fitting import comparison_csv, fit_table, load_dataset, mle, wrji_model_comparison

bladder = load_dataset("bladder_cancer_128").values
print(fit_table([mle(f, bladder) for f in ("LL", "APLL", "ExLL")]))

guinea = load_dataset("guinea_pigs_72").values
fits = {f: mle(f, guinea) for f in ("WEI", "GEE", "EEG")}
print()
print(fit_table(list(fits.values())))

rep = wrji_model_comparison(guinea, "GEE", ["WEI", "EEG"], np.linspace(0.0, 3.0, 7), fits=fits)
print()
print(comparison_csv(rep, digits=5))
for c in ("WEI", "EEG"):
    print(f"mean absolute deviation of J_h from the {c} curve: {rep.closeness(c):.4f}")
