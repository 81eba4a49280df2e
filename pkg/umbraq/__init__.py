from umbraq import qcore, quadrature, umbral, qfunctions, qtrig, jackson, tsallis, verify


__version__ = "1.0.0"
