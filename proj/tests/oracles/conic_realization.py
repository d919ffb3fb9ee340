import sympy as sp
u,v=sp.symbols('u v')
E=(1,2*u); F=(v-2*u**2,-2*u*v); H=(-2*u,-4*v)
def br(X,Y):
    return tuple(sp.simplify(X[0]*sp.diff(Y[i],u)+X[1]*sp.diff(Y[i],v)-Y[0]*sp.diff(X[i],u)-Y[1]*sp.diff(X[i],v)) for i in range(2))
print('EH',br(E,H),'EF',br(E,F),'HF',br(H,F))
# try X1=E, X2=a*H, X3=b*F
a,b=sp.symbols('a b')
X1=E; X2=tuple(a*c for c in H); X3=tuple(b*c for c in F)
def comb(c, X): return tuple(c*x for x in X)
eqs=[]
for (P,Q,R_,k) in [(X1,X2,X1,1),(X1,X3,X2,2),(X2,X3,X3,1)]:
    B=br(P,Q)
    eqs+= [sp.simplify(B[i]-k*R_[i]) for i in range(2)]
print(sp.solve(eqs,[a,b],dict=True))
