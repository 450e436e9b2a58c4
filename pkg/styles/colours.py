# Hasse diagram colours (hex, as Graphviz expects)
PURPLE = "#d23888"   # highest cover set edges
BLUE = "#74b9ff"     # remaining cover edges
GRAY = "#b3b3b3"     # vertices outside every cover
TEXT_COLOR = "#121212"

# Edge styles
HIGHEST_STYLE = "solid"
OTHER_STYLE = "dashed"

# Line parameters
LINEWIDTH = 1.5
FONTSIZE = 12
