# Field and size limits
MAX_PRIME = 17
MAX_N = 16

# Enumeration caps
NORMAL_ENUMERATION_CAP = 12
GROUP_ORDER_CAP = 2**20
PARTITION_CAP = 200_000
SUBPOSET_SEARCH_CAP = 20 # positions, the direct representative search walks 2^|P| subsets
CHARACTER_CHECK_CAP = 2**12 # group order up to which verify evaluates every supercharacter
CHARACTER_TABLE_CAP = 2**16 # largest |U_P| chartable evaluates, each row holds |U_P| x p counts

# Character evaluation memory
ROW_BATCH_ENTRIES = 2**22 # int64 entries in one group x orbit-members pairing block
ROW_CACHE_SIZE = 8 # character rows an oracle keeps
SUM_BATCH = 2**12 # rows summed in int64 before moving to exact integers

# Command line defaults
DEFAULT_PRIME = 2
DEFAULT_JOBS = 1
DEFAULT_FORMAT = "json"

RANDOM_SEED = 20100401 # Row-constancy spot checks

LOG_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'
