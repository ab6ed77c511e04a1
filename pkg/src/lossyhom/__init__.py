"""Two-photon interference on lossy, phase-change-material beam splitters."""
