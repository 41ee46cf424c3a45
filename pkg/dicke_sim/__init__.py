from dicke_sim.__version__ import __version__
