"""Shared label and modality conventions.

The canonical modality order below fixes the bit order of every
availability mask in the package; the label integers fix the channel
order of every 4-class logit tensor.
"""

MODALITIES = ("t1", "t1ce", "t2", "flair")
NUM_MODALITIES = len(MODALITIES)

LABEL_BG = 0
LABEL_NCR = 1   # necrotic / non-enhancing core
LABEL_ED = 2    # peritumoral edema
LABEL_ET = 3    # enhancing tumor
NUM_CLASSES = 4

# Region composition: whole tumor, tumor core, enhancing tumor.
WT_LABELS = (LABEL_NCR, LABEL_ED, LABEL_ET)
TC_LABELS = (LABEL_NCR, LABEL_ET)
ET_LABELS = (LABEL_ET,)

REGIONS = ("WT", "TC", "ET")


def modality_index(name: str) -> int:
    try:
        return MODALITIES.index(name.lower())
    except ValueError:
        raise ValueError(f"unknown modality {name!r}; expected one of {MODALITIES}") from None
