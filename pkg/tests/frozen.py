"""Reference values computed once from closed forms and frozen.

Each constant notes the closed form it came from where one exists.
"""
import math

SQRT17 = math.sqrt(17.0)

# unit square [0,1]^2, x0 at the corner (0, 0)
SQUARE_CORNER_CROSSING = (2.561552812808831, 2.561552812808829)      # (1 + sqrt 17)/2 * (1, 1)
SQUARE_CORNER_THETA_L = 8.401438672541722
SQUARE_CORNER_THETA_R = -0.5474570385672402
SQUARE_CORNER_THETA_STAR_L = 9.42477796076938                       # 3 pi
SQUARE_CORNER_THETA_STAR_R = -1.5707963267948966                    # -pi/2

# unit square, x0 = (0.5, 0) on the bottom edge
SQUARE_EDGE_CROSSING = (0.5, 3.449489742783178)                      # height 1 + sqrt 6
SQUARE_EDGE_THETA_L = 9.223420039979048
SQUARE_EDGE_THETA_STAR_L = 10.471975511965978                        # 10 pi / 3

# hexagon with vertices (cos k pi/3, sin k pi/3), x0 = (1, 0)
HEXAGON_CROSSING = (-4.405124837953327, 0.0)
HEXAGON_THETA_L = 10.777339773196816

# tilde involute of the square corner
SQUARE_TILDE_END_X = -4.4792993549757645
SQUARE_TILDE_PIECES = 143
SQUARE_TILDE_LENGTH = 15.936085031857

# minimal connectors from the square corner (0, 0)
CONNECT_V = ((3.0, 3.0), [6.71238898038469, 6.71238898038469])      # 2 + 3 pi / 2 each
CONNECT_FAR = ((-6.0, 6.0), [15.734398808301606, 8.569094282247018])
CONNECT_BR = ((-3.0, 0.5), [3.042163146251773])
CONNECT_UP = ((-2.0, 4.0), [11.42477796076938, 4.727930239887897])

# extension of two diverging segments
DIVERGING_BAR_LENGTH = 3.0638345536096123

# four-point set with the quarter-disc obstruction: fence arc radius
QUARTER_DISC_FENCE_RADIUS = 2.0 + math.sqrt(13.0 - 4.0 * math.sqrt(8.0))

# rectangle [0,3] x [0,0.1], x0 = (2.5, 0): crossing past the 3 pi/2 window
THIN_RECT_CROSSING = (-1.5552421350004786, 3.3572640500144093)
THIN_RECT_THETA_L = 9.85859323344986
