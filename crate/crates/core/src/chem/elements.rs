const SYMBOLS: [&str; 118] = [
    "H", "He", "Li", "Be", "B", "C", "N", "O", "F", "Ne", "Na", "Mg", "Al", "Si", "P", "S", "Cl",
    "Ar", "K", "Ca", "Sc", "Ti", "V", "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn", "Ga", "Ge", "As",
    "Se", "Br", "Kr", "Rb", "Sr", "Y", "Zr", "Nb", "Mo", "Tc", "Ru", "Rh", "Pd", "Ag", "Cd", "In",
    "Sn", "Sb", "Te", "I", "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd", "Pm", "Sm", "Eu", "Gd", "Tb",
    "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W", "Re", "Os", "Ir", "Pt", "Au", "Hg", "Tl",
    "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th", "Pa", "U", "Np", "Pu", "Am", "Cm", "Bk",
    "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db", "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh",
    "Fl", "Mc", "Lv", "Ts", "Og",
];

/// Atomic number of an element symbol. Aromatic lowercase forms
/// (`c`, `n`, `se`, ...) are accepted.
pub fn atomic_number(element: &str) -> Option<u32> {
    let mut chars = element.chars();
    let first = chars.next()?;
    let canonical: String = first.to_ascii_uppercase().to_string() + chars.as_str();
    SYMBOLS
        .iter()
        .position(|&s| s == canonical)
        .map(|p| p as u32 + 1)
}

/// Canonical (capitalized) symbol with static lifetime.
pub(crate) fn canonical_symbol(element: &str) -> Option<&'static str> {
    atomic_number(element).map(|z| SYMBOLS[z as usize - 1])
}
